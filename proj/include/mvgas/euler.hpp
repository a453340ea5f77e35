#ifndef MVGAS_EULER_HPP
#define MVGAS_EULER_HPP

#include "mvgas/exec.hpp"
#include "mvgas/grid.hpp"

namespace mvgas {

/// Flux of (rho, m, E) along one axis.
struct EulerFluxV {
    double mass = 0.0;
    double mom_x = 0.0;
    double mom_y = 0.0;
    double energy = 0.0;
};

/// Physical flux: (m_a, m m_a / rho + p e_a, (E + p) u_a) with
/// p = (E - kin)/c_v.  Vacuum maps to zero flux.
EulerFluxV euler_physical_flux(const ConservativeState& state, const GasParams& gas,
                               int axis);

/// |u_a| + sqrt(gamma theta); 0 at vacuum.
double max_wave_speed(const ConservativeState& state, const GasParams& gas, int axis);

/// 0.5 (F(L) + F(R)) - 0.5 lambda (R - L), lambda the larger of the two
/// cell wave speeds.
EulerFluxV rusanov_flux(const ConservativeState& left, const ConservativeState& right,
                        const GasParams& gas, int axis);

struct StepStats {
    double dt = 0.0;
    int retries = 0;
};

/// One SSP-RK2 step with Rusanov fluxes; dt = cfl dx / max lambda, halved and
/// retried (max 5) if positivity fails.  Slip walls via mirror ghosts.
StepStats step_euler(ConsField& field, const Grid& grid, const GasParams& gas,
                     double cfl, Exec exec = Exec::Parallel, double dt_cap = 0.0);

struct RunSpec {
    double t_end = 0.2;
    double sample_dt = 0.02;
    double cfl = 0.45;
    Exec exec = Exec::Parallel;
};

FieldTrajectory run_euler(const ConsField& initial, const Grid& grid,
                          const GasParams& gas, const RunSpec& spec);

} // namespace mvgas

#endif
