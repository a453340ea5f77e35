#ifndef MVGAS_RELATIVE_ENERGY_HPP
#define MVGAS_RELATIVE_ENERGY_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mvgas/chi.hpp"
#include "mvgas/grid.hpp"

namespace mvgas {

/// H_ref(rho, theta) = c_v rho theta - theta_ref rho (c_v log theta - log rho).
double ballistic_free_energy(double rho, double theta, double theta_ref,
                             const GasParams& gas);

/// Bregman distance of H at the reference point plus the kinetic part:
/// 1/2 rho |u - u_ref|^2 + H(rho,theta) - dH/drho(ref)(rho - rho_ref) - H(ref).
double relative_energy_primitive(const PrimitiveState& state, const PrimitiveState& ref,
                                 const GasParams& gas);

/// Conservative form: -theta_ref [ S(X) - S(R) - dS(R).(X - R) ] with S the
/// un-normalized total entropy; +inf marker when X hits a -inf branch of S.
XReal relative_energy_conservative(const ConservativeState& cons,
                                   const ConservativeState& ref_cons, double theta_ref,
                                   const GasParams& gas);

/// Smooth reference fields with first derivatives.
struct StrongEval {
    double rho = 1.0, theta = 1.0;
    Vec3 u;
    double drho_dt = 0.0;
    Vec3 grad_rho;
    double dtheta_dt = 0.0;
    Vec3 grad_theta;
    Vec3 du_dt;
    double grad_u[2][2] = {{0, 0}, {0, 0}};

    ConservativeState conservative(const GasParams& gas) const {
        return {rho, rho * u, 0.5 * rho * u.norm2() + gas.c_v * rho * theta};
    }
};

struct StrongSolution {
    std::function<StrongEval(double t, std::array<double, 2> x)> eval;
};

/// rho(t,x) = 1 + amp sin(2 pi (x - speed t)/L), u = speed, p = pressure:
/// an exact smooth solution (constant velocity and pressure advect density).
StrongSolution traveling_contact(double amp, double speed, double pressure,
                                 const Grid& grid);

/// Exact contact sampled on the grid as a trajectory (calibration input).
FieldTrajectory exact_contact_trajectory(const Grid& grid, const GasParams& gas,
                                         double amp, double speed, double pressure,
                                         double horizon, int nsamples);

struct WeakStrongSeries {
    double epsilon = 0.0;
    std::vector<double> times, rel_energy, l1_rho, l1_m, l1_E;
    double max_rel_energy = 0.0, max_l1_rho = 0.0, max_l1_m = 0.0, max_l1_E = 0.0;
    double gronwall_C = 0.0;
};

struct WeakStrongReport {
    std::vector<WeakStrongSeries> members;
    // log-log decay slopes of the max-in-time quantities vs epsilon
    double order_rel_energy = 0.0, order_l1_rho = 0.0, order_l1_m = 0.0, order_l1_E = 0.0;
};

/// Relative-energy and L1 distance time series per sweep member, with fitted
/// decay orders across the sweep and a Gronwall-shape constant per run.
WeakStrongReport weak_strong_monitor(std::span<const FieldTrajectory> sweep,
                                     const StrongSolution& strong, const GasParams& gas);

/// Diagnostic evaluation of the relative energy inequality at the final time:
/// left side and the six right-side integral groups, reported separately.
struct RelEnergyLedger {
    double tau = 0.0;
    double lhs_bracket = 0.0;     // [int <E_rel>]_0^tau
    double lhs_energy_gap = 0.0;  // int (<U0;E> - <Utau;E>)
    double rhs_entropy = 0.0;     // -(S_chi terms against d theta_ref)
    double rhs_velocity = 0.0;    // (rho u_ref - m) against d u_ref
    double rhs_pressure = 0.0;    // -(gamma-1) (E - kin) div u_ref
    double rhs_mass = 0.0;        // rho, m against d theta_ref log(theta^cv/rho)
    double rhs_pressure_ref = 0.0;// (rho_ref - rho)/rho_ref terms
    double rhs_concentration = 0.0;
    double lhs() const { return lhs_bracket + lhs_energy_gap; }
    double rhs() const {
        return rhs_entropy + rhs_velocity + rhs_pressure + rhs_mass + rhs_pressure_ref +
               rhs_concentration;
    }
};

RelEnergyLedger relative_energy_inequality_ledger(const FieldTrajectory& traj,
                                                  const StrongSolution& strong,
                                                  const GasParams& gas,
                                                  const ChiSpec& chi);

/// Capped chi whose cap clears the strong solution's entropy range (used by
/// the inequality ledger).
ChiSpec ledger_chi_for(const StrongSolution& strong, const Grid& grid,
                       const GasParams& gas, double horizon);

} // namespace mvgas

#endif
