#ifndef MVGAS_GAS_HPP
#define MVGAS_GAS_HPP

#include <array>
#include <cmath>

#include "mvgas/errors.hpp"
#include "mvgas/xreal.hpp"

namespace mvgas {

// Density band treated as vacuum; the exact rho = 0 semantics extend to it.
inline constexpr double kVacuumFloor = 1e-12;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double a) const { return {a * x, a * y, a * z}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline Vec3 operator*(double a, const Vec3& v) { return v * a; }

/// Perfect-gas constants.  gamma is stored redundantly; construction pins
/// gamma = 1 + 1/c_v exactly.
struct GasParams {
    double c_v;
    double gamma;

    static GasParams from_cv(double c_v) {
        if (!(c_v > 0.0)) throw DomainError("GasParams: c_v must be > 0");
        return GasParams{c_v, 1.0 + 1.0 / c_v};
    }
    static GasParams from_gamma(double gamma) {
        if (!(gamma > 1.0)) throw DomainError("GasParams: gamma must be > 1");
        return GasParams{1.0 / (gamma - 1.0), gamma};
    }
};

/// (rho, m, E) point value; the phase space is Q = {rho >= 0, E >= 0}.
struct ConservativeState {
    double rho = 0.0;
    Vec3 m;
    double E = 0.0;

    bool in_Q() const { return rho >= 0.0 && E >= 0.0; }
};

/// rho, velocity, temperature with derived pressure and specific entropy.
/// s is extended-valued (vacuum carries a -inf marker).
struct PrimitiveState {
    double rho = 0.0;
    Vec3 u;
    double theta = 0.0;
    double p = 0.0;
    XReal s = XReal::neg_inf();
};

// --- point operations -------------------------------------------------------

/// 1/2 |m|^2 / rho extended to vacuum: 0 if m = 0, +inf marker otherwise.
XReal kinetic_energy_ext(double rho, const Vec3& m, double floor = kVacuumFloor);

/// s(rho, theta) = c_v log(theta) - log(rho); extended markers off the
/// positive quadrant.
XReal specific_entropy(double rho, double theta, const GasParams& gas,
                       double floor = kVacuumFloor);

PrimitiveState make_primitive(double rho, const Vec3& u, double theta,
                              const GasParams& gas, double floor = kVacuumFloor);

ConservativeState primitive_to_conservative(const PrimitiveState& prim,
                                            const GasParams& gas);

PrimitiveState conservative_to_primitive(const ConservativeState& cons,
                                         const GasParams& gas,
                                         double floor = kVacuumFloor);

/// Internal energy density E - kin as a finite number; throws on the +inf
/// kinetic branch.
double internal_energy(const ConservativeState& cons, double floor = kVacuumFloor);

/// Pressure p = (E - kin)/c_v in conservative variables; 0 at vacuum.
double pressure_cons(const ConservativeState& cons, const GasParams& gas,
                     double floor = kVacuumFloor);

/// Temperature from conservative variables; 0 at vacuum.
double temperature_cons(const ConservativeState& cons, const GasParams& gas,
                        double floor = kVacuumFloor);

/// Specific entropy through conservative variables,
/// s = c_v log((E - kin)/(c_v rho^gamma)); extended cases as in S_chi.
XReal specific_entropy_cons(const ConservativeState& cons, const GasParams& gas,
                            double floor = kVacuumFloor);

/// Un-normalized total entropy S = rho s with the vacuum extension:
/// 0 if rho = 0, m = 0, E >= 0; -inf otherwise off the interior.
XReal total_entropy(const ConservativeState& cons, const GasParams& gas,
                    double floor = kVacuumFloor);

struct EntropyPartials {
    double d_rho;   // s - (c_v + 1) + |u|^2/(2 theta)
    Vec3 d_m;       // -u / theta
    double d_E;     // 1 / theta
};

/// Analytic partial derivatives of S at an interior point (rho > 0, E > kin).
EntropyPartials total_entropy_partials(const ConservativeState& cons,
                                       const GasParams& gas,
                                       double floor = kVacuumFloor);

} // namespace mvgas

#endif
