#include "mvgas/chi.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mvgas {

void validate_chi(const ChiSpec& chi, const ChiValidation& v) {
    if (!std::isfinite(chi.cap))
        throw InadmissibleChiError("chi '" + chi.name + "': cap must be finite (unbounded above)");
    if (!chi.eval) throw InadmissibleChiError("chi '" + chi.name + "': missing eval");

    const int n = static_cast<int>(std::floor((v.s_max - v.s_min) / v.step)) + 1;
    std::vector<double> val(n);
    for (int i = 0; i < n; ++i) val[i] = chi.eval(v.s_min + i * v.step);

    for (int i = 0; i < n; ++i) {
        const double s = v.s_min + i * v.step;
        if (val[i] > chi.cap + v.tol) {
            std::ostringstream os;
            os << "chi '" << chi.name << "': cap violated at s = " << s
               << " (chi = " << val[i] << " > cap = " << chi.cap << ")";
            throw InadmissibleChiError(os.str());
        }
        if (chi.require_monotone) {
            if (chi.deriv && chi.deriv(s) < -v.tol) {
                std::ostringstream os;
                os << "chi '" << chi.name << "': not monotone (chi' = " << chi.deriv(s)
                   << " at s = " << s << ")";
                throw InadmissibleChiError(os.str());
            }
            if (i > 0 && val[i] < val[i - 1] - v.tol) {
                std::ostringstream os;
                os << "chi '" << chi.name << "': not monotone (decreasing near s = " << s << ")";
                throw InadmissibleChiError(os.str());
            }
        }
        if (i >= 2) {
            // concavity on the sampled triple: chi(mid) >= average - tol
            if (val[i - 1] < 0.5 * (val[i - 2] + val[i]) - v.tol) {
                std::ostringstream os;
                os << "chi '" << chi.name << "': not concave near s = " << s - v.step;
                throw InadmissibleChiError(os.str());
            }
        }
    }
}

ChiSpec build_chi_truncation(double s0, double k, bool smooth, double blend) {
    if (!std::isfinite(k))
        throw InadmissibleChiError("truncation chi: cap must be finite (unbounded above)");
    ChiSpec chi;
    chi.cap = k;
    std::ostringstream os;
    os << (smooth ? "smooth-trunc" : "trunc") << "(s0=" << s0 << ",k=" << k << ")";
    chi.name = os.str();
    if (!smooth) {
        chi.kind = ChiKind::Truncation;
        chi.eval = [s0, k](double s) { return std::min(s - s0, k); };
        chi.deriv = [s0, k](double s) { return (s - s0) < k ? 1.0 : 0.0; };
        chi.deriv2 = [](double) { return 0.0; };
    } else {
        chi.kind = ChiKind::SmoothTruncation;
        const double w = blend;
        // x <= k-w: x ; |x-k| < w: k - (x-k-w)^2/(4w) ; x >= k+w: k
        chi.eval = [s0, k, w](double s) {
            const double x = s - s0;
            if (x <= k - w) return x;
            if (x >= k + w) return k;
            const double d = x - k - w;
            return k - d * d / (4.0 * w);
        };
        chi.deriv = [s0, k, w](double s) {
            const double x = s - s0;
            if (x <= k - w) return 1.0;
            if (x >= k + w) return 0.0;
            return -(x - k - w) / (2.0 * w);
        };
        chi.deriv2 = [s0, k, w](double s) {
            const double x = s - s0;
            if (x <= k - w || x >= k + w) return 0.0;
            return -1.0 / (2.0 * w);
        };
    }
    validate_chi(chi);
    return chi;
}

ChiSpec build_chi_window(double s_lo, double s_hi) {
    if (!(s_lo <= s_hi)) throw InadmissibleChiError("window chi: s_lo > s_hi");
    ChiSpec chi;
    chi.kind = ChiKind::Window;
    chi.cap = 0.0;
    chi.require_monotone = false;
    std::ostringstream os;
    os << "window[" << s_lo << "," << s_hi << "]";
    chi.name = os.str();
    chi.eval = [s_lo, s_hi](double s) {
        if (s < s_lo) return s - s_lo;
        if (s > s_hi) return s_hi - s;
        return 0.0;
    };
    chi.deriv = [s_lo, s_hi](double s) {
        if (s < s_lo) return 1.0;
        if (s > s_hi) return -1.0;
        return 0.0;
    };
    chi.deriv2 = [](double) { return 0.0; };
    validate_chi(chi);
    return chi;
}

ChiSpec build_chi_custom(std::string name, std::function<double(double)> eval,
                         std::function<double(double)> deriv,
                         std::function<double(double)> deriv2, double cap,
                         bool require_monotone) {
    ChiSpec chi;
    chi.kind = ChiKind::Custom;
    chi.name = std::move(name);
    chi.eval = std::move(eval);
    chi.deriv = std::move(deriv);
    chi.deriv2 = std::move(deriv2);
    chi.cap = cap;
    chi.require_monotone = require_monotone;
    validate_chi(chi);
    return chi;
}

std::vector<ChiSpec> chi_battery(double s0, const std::vector<double>& ks, bool smooth) {
    std::vector<ChiSpec> battery;
    battery.reserve(ks.size());
    for (double k : ks) battery.push_back(build_chi_truncation(s0, k, smooth));
    return battery;
}

std::vector<ChiSpec> chi_battery_default(double s0, bool smooth) {
    return chi_battery(s0, {-2.0, -1.0, 0.0, 1.0, 2.0}, smooth);
}

XReal renorm_total_entropy(const ConservativeState& cons, const ChiSpec& chi,
                           const GasParams& gas, double floor) {
    if (cons.rho > floor) {
        const double kin = 0.5 * cons.m.norm2() / cons.rho;
        const double eint = cons.E - kin;
        if (eint <= 0.0) return XReal::neg_inf();
        const double s = gas.c_v * std::log(eint / (gas.c_v * std::pow(cons.rho, gas.gamma)));
        return XReal(cons.rho * chi.eval(s));
    }
    if (cons.m.norm() <= floor && cons.E >= -floor) return XReal(0.0);
    return XReal::neg_inf();
}

} // namespace mvgas
