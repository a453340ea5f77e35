#ifndef MVGAS_NS_ENTROPY_HPP
#define MVGAS_NS_ENTROPY_HPP

#include <string>
#include <vector>

#include "mvgas/chi.hpp"
#include "mvgas/euler.hpp"
#include "mvgas/exec.hpp"
#include "mvgas/grid.hpp"

namespace mvgas {

/// Parameters of the epsilon-regularized system with entropy transport:
/// pressure Z^gamma + eps Z^beta, viscous term eps div S(grad u).
struct NSEntropyParams {
    double epsilon = 1e-2;  // >= 0; 0 degenerates to ideal transport
    double beta = 0.0;      // >= max(gamma, 4); 0 resolves to exactly that bound
    double mu = 1.0;        // shear viscosity constant, > 0
    double eta = 0.0;       // bulk viscosity constant, >= 0
    double c_star = 0.0;    // entropy-window bounds on Z / rho
    double c_upper = 0.0;

    void validate(const GasParams& gas) const;
};

/// Evolved state (rho, Z, m); theta and E are derived.
struct NsField {
    std::vector<double> rho, Z, mx, my;
    void resize(int cells) {
        rho.assign(cells, 0.0);
        Z.assign(cells, 0.0);
        mx.assign(cells, 0.0);
        my.assign(cells, 0.0);
    }
    int size() const { return static_cast<int>(rho.size()); }
};

/// theta = Z^gamma / rho for rho > 0, 0 at vacuum.
double recover_theta(double rho, double Z, const GasParams& gas,
                     double floor = kVacuumFloor);

ConservativeState ns_conservative_state(const NsField& f, int i, const GasParams& gas);

/// One SSP-RK2 step.  rho and Z share the per-face dissipation speed, so the
/// ratio Z/rho obeys a discrete maximum principle; the configured window
/// [c_star, c_upper] is enforced to 1e-10.
StepStats step_ns_entropy(NsField& field, const Grid& grid, NSEntropyParams params,
                          const GasParams& gas, double cfl, Exec exec = Exec::Parallel,
                          double dt_cap = 0.0, double* dissipation_accum = nullptr);

struct NsLedger {
    std::vector<double> times;
    std::vector<double> energy_reg;    // integral of 1/2 rho|u|^2 + c_v Z^g + eps/(b-1) Z^b
    std::vector<double> viscous_cum;   // accumulated eps S(grad u):grad u
    std::vector<std::string> chi_names;
    std::vector<std::vector<double>> chi_series;  // per chi, integral rho chi(s) over time
};

struct NsRunResult {
    FieldTrajectory traj;
    NsLedger ledger;
};

/// Runs the solver and records the regularized-energy / dissipation ledger.
/// Initial data must satisfy 0 < c_star rho <= Z <= c_upper rho; when the
/// params window is unset (0), it is derived from the data.
NsRunResult run_ns_entropy(const NsField& initial, const Grid& grid,
                           NSEntropyParams params, const GasParams& gas,
                           const RunSpec& spec,
                           const std::vector<ChiSpec>& battery = {});

} // namespace mvgas

#endif
