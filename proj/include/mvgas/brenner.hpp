#ifndef MVGAS_BRENNER_HPP
#define MVGAS_BRENNER_HPP

#include <string>
#include <vector>

#include "mvgas/chi.hpp"
#include "mvgas/euler.hpp"
#include "mvgas/exec.hpp"
#include "mvgas/grid.hpp"

namespace mvgas {

enum class MuLaw { Rho, InvTheta, RhoPlusInvTheta };

/// Two-velocity model in the epsilon-scaled form: kappa = kappa_coeff * rho,
/// mu by law (default mu_coeff * rho), eta identically 0, K = kappa/(c_v rho).
struct BrennerParams {
    double epsilon = 1e-2;     // >= 0
    double kappa_coeff = 1.0;  // > 0
    double mu_coeff = 1.0;     // > 0
    double eta = 0.0;          // must be 0
    double s0 = 0.0;           // entropy floor of the initial data
    MuLaw mu_law = MuLaw::Rho;
    double smoothness_bound = 1e3;  // cap on |second difference| / dx^2

    void validate() const;
    double mu(double rho, double theta) const;
};

struct VelocityField {
    std::vector<double> x, y;
};

/// u_m = u - (eps kappa/(c_v rho)) grad log rho with centered gradients;
/// with kappa = kappa_coeff rho this is u - (eps kappa_coeff/c_v) grad rho / rho.
/// Throws on vacuum cells (singular gradient).
VelocityField mass_velocity(const VelocityField& u, const std::vector<double>& rho,
                            const BrennerParams& params, const GasParams& gas,
                            const Grid& grid);

/// One SSP-RK2 step of the rewritten system: mass gains (eps/c_v) div(kappa
/// grad log rho), momentum the convective correction and eps div S, and total
/// energy is evolved in face-flux form so the global sum telescopes exactly.
StepStats step_brenner(ConsField& field, const Grid& grid, const BrennerParams& params,
                       const GasParams& gas, double cfl, Exec exec = Exec::Parallel,
                       double dt_cap = 0.0);

/// Four pointwise production terms of the renormalized entropy balance, each
/// nonnegative for admissible chi (chi' >= 0, chi'' <= 0):
///   eps chi'/theta S:grad u,  eps kappa chi' |grad log theta|^2,
///   eps chi' (kappa/c_v) |grad log rho|^2,  -eps chi'' (kappa/c_v) |grad s|^2.
struct EntropyProduction {
    std::vector<double> stress, heat, mass_diff, renorm;
    double stress_int = 0.0, heat_int = 0.0, mass_diff_int = 0.0, renorm_int = 0.0;
    double total() const { return stress_int + heat_int + mass_diff_int + renorm_int; }
};

EntropyProduction entropy_production_terms(const ConsField& field, const Grid& grid,
                                           const BrennerParams& params,
                                           const GasParams& gas, const ChiSpec& chi);

/// Instantaneous spatial L1 magnitudes of the four dissipative terms
/// (eps kappa grad log rho, eps kappa (u x grad log rho), eps S, eps kappa
/// grad log theta) plus the entropy-production budget integrand.
struct DissipativeMagnitudes {
    double mass_grad = 0.0, convective = 0.0, stress = 0.0, heat_grad = 0.0;
    double production = 0.0;
};

DissipativeMagnitudes dissipative_term_magnitudes(const ConsField& field,
                                                  const Grid& grid,
                                                  const BrennerParams& params,
                                                  const GasParams& gas);

/// Space-time L1 magnitudes of the dissipative terms, accumulated over a run:
/// eps kappa grad log rho, eps kappa (u x grad log rho), eps S(grad u),
/// eps kappa grad log theta; plus the production budget.
struct BrennerLedger {
    std::vector<double> times;
    std::vector<double> energy_tot;
    std::vector<double> min_entropy;  // over non-vacuum cells
    std::vector<std::string> chi_names;
    std::vector<std::vector<double>> chi_series;
    double est_mass_grad = 0.0;    // int |eps kappa grad log rho|
    double est_convective = 0.0;   // int |eps kappa (u x grad log rho)|
    double est_stress = 0.0;       // int |eps S|
    double est_heat_grad = 0.0;    // int |eps kappa grad log theta|
    double production_budget = 0.0;
};

struct BrennerRunResult {
    FieldTrajectory traj;
    BrennerLedger ledger;
};

/// Refuses initial data with vacuum or non-smooth jumps (classical-solution
/// regime); records the dissipation-term ledger.
BrennerRunResult run_brenner(const ConsField& initial, const Grid& grid,
                             const BrennerParams& params, const GasParams& gas,
                             const RunSpec& spec,
                             const std::vector<ChiSpec>& battery = {});

} // namespace mvgas

#endif
