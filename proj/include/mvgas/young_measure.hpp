#ifndef MVGAS_YOUNG_MEASURE_HPP
#define MVGAS_YOUNG_MEASURE_HPP

#include <functional>
#include <span>
#include <vector>

#include "mvgas/grid.hpp"
#include "mvgas/xreal.hpp"

namespace mvgas {

enum class PoolMode { Reference, All };

/// Coarse space-time partition for the empirical measure.  0 entries mean
/// "same as the fine sampling" (pure Dirac embedding).
struct CoarseSpec {
    int nt = 0;
    int nx = 0;
    int ny = 0;
    PoolMode pool = PoolMode::Reference;
    int reference = -1;  // -1: member with the smallest epsilon
    // optional histogram compression: bin widths per (rho, |m| comps, E); 0 = exact atoms
    std::array<double, 3> hist_bin{0.0, 0.0, 0.0};
};

struct Atom {
    ConservativeState state;
    double weight;
};

/// Per coarse space-time cell, a weighted atom set over Q (weights sum to 1).
struct EmpiricalYoungMeasure {
    Grid fine_grid;      // of the reference member
    Grid coarse_grid;    // spatial coarse partition
    int nt = 0;          // time blocks
    std::vector<double> block_times;               // representative time per block
    std::vector<std::array<double, 2>> block_span; // [t_lo, t_hi] per block
    std::vector<std::vector<Atom>> cells;          // [block * coarse_cells + cell]
    std::vector<std::vector<Atom>> initial;        // per coarse space cell at t = 0
    int reference_member = 0;

    int space_cells() const { return coarse_grid.cells(); }
    int cell_index(int block, int cell) const { return block * space_cells() + cell; }
};

/// Pools fine-cell states into coarse cells with uniform weights; moments of
/// order <= 2 match the pooled sample moments exactly.  Throws on mismatched
/// domains or an empty coarse cell.
EmpiricalYoungMeasure build_empirical_measure(std::span<const FieldTrajectory> trajs,
                                              const CoarseSpec& spec);

/// Expected value of a Borel observable on Q; extended atoms propagate
/// through extended arithmetic.
XReal expectation(const EmpiricalYoungMeasure& U, int cell_index,
                  const std::function<XReal(const ConservativeState&)>& g);

XReal expectation_initial(const EmpiricalYoungMeasure& U, int space_cell,
                          const std::function<XReal(const ConservativeState&)>& g);

/// Mean state (first moments) of a cell.
ConservativeState mean_state(const EmpiricalYoungMeasure& U, int cell_index);

/// Trace of the per-cell covariance of (rho, m, E); 0 iff the measure is a
/// Dirac mass there.
double measure_spread(const EmpiricalYoungMeasure& U, int cell_index);

/// Residuals/margins of the limit energy identity and the concentration proxy.
struct DefectLedger {
    std::vector<double> times;
    std::vector<double> energy_defect;              // D(t) = int<U0;E> - int<Ut;E>
    std::vector<double> member_epsilon;             // per sweep member
    std::vector<std::vector<double>> member_gap;    // int E_m(t) - int <Ut;E>
    std::vector<double> concentration;              // per coarse cell, proxy magnitude
    double concentration_mass = 0.0;                // space-time L1 of the proxy
};

/// D(t) from the measure's own energy loss; per-member gaps against the
/// measure; concentration proxy = |coarsest member's cell-averaged momentum
/// nonlinearity - measure expectation| (plus the pressure part).
DefectLedger energy_defect(std::span<const FieldTrajectory> sweep,
                           const EmpiricalYoungMeasure& U, const GasParams& gas);

} // namespace mvgas

#endif
