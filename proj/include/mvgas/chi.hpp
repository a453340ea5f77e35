#ifndef MVGAS_CHI_HPP
#define MVGAS_CHI_HPP

#include <functional>
#include <string>
#include <vector>

#include "mvgas/gas.hpp"

namespace mvgas {

enum class ChiKind { Truncation, SmoothTruncation, Window, Custom };

/// Admissible renormalizing function: non-decreasing, concave, bounded above
/// by cap.  The Window kind (zero inside an entropy band, negative outside)
/// is concave and capped but not monotone; it is only used where any
/// continuous chi is allowed and carries require_monotone = false.
struct ChiSpec {
    ChiKind kind = ChiKind::Custom;
    std::string name;
    double cap = 0.0;
    bool require_monotone = true;
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    std::function<double(double)> deriv2;

    double operator()(double s) const { return eval(s); }
};

/// Validation grid: s in [-20, 20] with step 1e-2.
struct ChiValidation {
    double s_min = -20.0;
    double s_max = 20.0;
    double step = 1e-2;
    double tol = 1e-9;
};

/// Throws InadmissibleChiError naming the violated property.
void validate_chi(const ChiSpec& chi, const ChiValidation& v = {});

/// chi(s) = min(s - s0, k); the smooth variant blends the kink with a
/// quadratic of half-width `blend` so chi' and chi'' exist everywhere.
ChiSpec build_chi_truncation(double s0, double k, bool smooth = false,
                             double blend = 1e-3);

/// Zero on [s_lo, s_hi], negative with slope +-1 outside; concave, cap 0.
ChiSpec build_chi_window(double s_lo, double s_hi);

ChiSpec build_chi_custom(std::string name, std::function<double(double)> eval,
                         std::function<double(double)> deriv,
                         std::function<double(double)> deriv2, double cap,
                         bool require_monotone = true);

/// Standard battery: truncations at s0 + k for the given cap list.
std::vector<ChiSpec> chi_battery(double s0, const std::vector<double>& ks,
                                 bool smooth = true);

/// Default cap list {-2, -1, 0, 1, 2}.
std::vector<ChiSpec> chi_battery_default(double s0 = 0.0, bool smooth = true);

/// Renormalized total entropy S_chi(rho, m, E):
///   rho * chi(c_v log((E - kin)/(c_v rho^gamma)))  if rho > 0, E > kin,
///   0                                              if rho = 0, m = 0, E >= 0,
///   -inf marker                                    otherwise.
XReal renorm_total_entropy(const ConservativeState& cons, const ChiSpec& chi,
                           const GasParams& gas, double floor = kVacuumFloor);

} // namespace mvgas

#endif
