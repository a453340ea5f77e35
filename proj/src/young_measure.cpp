#include "mvgas/young_measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace mvgas {

namespace {

int pick_reference(std::span<const FieldTrajectory> trajs, int configured) {
    if (configured >= 0) {
        if (configured >= static_cast<int>(trajs.size()))
            throw DomainError("build_empirical_measure: reference index out of range");
        return configured;
    }
    int best = 0;
    for (std::size_t i = 1; i < trajs.size(); ++i)
        if (trajs[i].epsilon < trajs[best].epsilon) best = static_cast<int>(i);
    return best;
}

void compress_histogram(std::vector<Atom>& atoms, const std::array<double, 3>& bin) {
    if (bin[0] <= 0.0 && bin[1] <= 0.0 && bin[2] <= 0.0) return;
    auto snap = [](double v, double w) {
        return w > 0.0 ? std::round(v / w) * w : v;
    };
    std::map<std::array<long long, 4>, Atom> merged;
    for (const Atom& a : atoms) {
        std::array<long long, 4> key{
            static_cast<long long>(bin[0] > 0 ? std::llround(a.state.rho / bin[0]) : 0),
            static_cast<long long>(bin[1] > 0 ? std::llround(a.state.m.x / bin[1]) : 0),
            static_cast<long long>(bin[1] > 0 ? std::llround(a.state.m.y / bin[1]) : 0),
            static_cast<long long>(bin[2] > 0 ? std::llround(a.state.E / bin[2]) : 0)};
        auto it = merged.find(key);
        if (it == merged.end()) {
            Atom snapped = a;
            snapped.state.rho = snap(a.state.rho, bin[0]);
            snapped.state.m.x = snap(a.state.m.x, bin[1]);
            snapped.state.m.y = snap(a.state.m.y, bin[1]);
            snapped.state.E = snap(a.state.E, bin[2]);
            merged.emplace(key, snapped);
        } else {
            it->second.weight += a.weight;
        }
    }
    atoms.clear();
    for (auto& [k, a] : merged) atoms.push_back(a);
}

} // namespace

EmpiricalYoungMeasure build_empirical_measure(std::span<const FieldTrajectory> trajs,
                                              const CoarseSpec& spec) {
    if (trajs.empty()) throw DomainError("build_empirical_measure: no trajectories");
    const FieldTrajectory& first = trajs.front();
    for (const FieldTrajectory& t : trajs) {
        if (t.grid.dim != first.grid.dim || t.grid.bc != first.grid.bc ||
            t.grid.length != first.grid.length)
            throw DomainError("build_empirical_measure: mismatched domains");
        if (t.times.size() != first.times.size() ||
            std::abs(t.times.back() - first.times.back()) > 1e-12)
            throw DomainError("build_empirical_measure: mismatched time horizons");
        t.check();
    }

    const int ref = pick_reference(trajs, spec.reference);
    const Grid& fg = trajs[ref].grid;
    const int nsamples = static_cast<int>(trajs[ref].times.size());

    EmpiricalYoungMeasure U;
    U.fine_grid = fg;
    U.reference_member = ref;
    U.nt = spec.nt > 0 ? std::min(spec.nt, nsamples) : nsamples;
    U.coarse_grid = fg;
    U.coarse_grid.n[0] = spec.nx > 0 ? spec.nx : fg.n[0];
    U.coarse_grid.n[1] = fg.dim == 2 ? (spec.ny > 0 ? spec.ny : fg.n[1]) : 1;
    for (int a = 0; a < fg.dim; ++a) {
        if (U.coarse_grid.n[a] > fg.n[a])
            throw DomainError("build_empirical_measure: coarse partition finer than the grid");
        U.coarse_grid.dx[a] = U.coarse_grid.length[a] / U.coarse_grid.n[a];
    }

    const int csc = U.coarse_grid.cells();
    U.cells.assign(static_cast<std::size_t>(U.nt) * csc, {});
    U.initial.assign(csc, {});
    U.block_times.assign(U.nt, 0.0);
    U.block_span.assign(U.nt, {0.0, 0.0});

    auto coarse_cell_of = [&](const Grid& mg, int fine_cell) {
        const int i = mg.ix(fine_cell), j = mg.iy(fine_cell);
        int ci = std::min(static_cast<int>(mg.center(0, i) / U.coarse_grid.dx[0]),
                          U.coarse_grid.n[0] - 1);
        int cj = 0;
        if (mg.dim == 2)
            cj = std::min(static_cast<int>(mg.center(1, j) / U.coarse_grid.dx[1]),
                          U.coarse_grid.n[1] - 1);
        return U.coarse_grid.index(ci, cj);
    };

    std::vector<int> block_of(nsamples);
    std::vector<int> block_count(U.nt, 0);
    for (int k = 0; k < nsamples; ++k) {
        block_of[k] = std::min(k * U.nt / nsamples, U.nt - 1);
        ++block_count[block_of[k]];
    }
    {
        std::vector<double> tmin(U.nt, 1e300), tmax(U.nt, -1e300), tsum(U.nt, 0.0);
        for (int k = 0; k < nsamples; ++k) {
            const int b = block_of[k];
            const double t = trajs[ref].times[k];
            tmin[b] = std::min(tmin[b], t);
            tmax[b] = std::max(tmax[b], t);
            tsum[b] += t;
        }
        for (int b = 0; b < U.nt; ++b) {
            U.block_times[b] = tsum[b] / block_count[b];
            U.block_span[b] = {tmin[b], tmax[b]};
        }
    }

    for (std::size_t mi = 0; mi < trajs.size(); ++mi) {
        if (spec.pool == PoolMode::Reference && static_cast<int>(mi) != ref) continue;
        const FieldTrajectory& tr = trajs[mi];
        for (int k = 0; k < nsamples; ++k) {
            const int b = block_of[k];
            const ConsField& f = tr.states[k];
            for (int c = 0; c < tr.grid.cells(); ++c) {
                const int cc = coarse_cell_of(tr.grid, c);
                U.cells[U.cell_index(b, cc)].push_back({f.state(c), 1.0});
                if (k == 0) U.initial[cc].push_back({f.state(c), 1.0});
            }
        }
    }

    auto normalize = [&](std::vector<Atom>& atoms, const char* what) {
        if (atoms.empty()) {
            std::ostringstream os;
            os << "build_empirical_measure: empty coarse " << what << " cell";
            throw DomainError(os.str());
        }
        const double w = 1.0 / static_cast<double>(atoms.size());
        for (Atom& a : atoms) a.weight = w;
        compress_histogram(atoms, spec.hist_bin);
    };
    for (auto& atoms : U.cells) normalize(atoms, "space-time");
    for (auto& atoms : U.initial) normalize(atoms, "initial");
    return U;
}

XReal expectation(const EmpiricalYoungMeasure& U, int cell_index,
                  const std::function<XReal(const ConservativeState&)>& g) {
    XReal acc = 0.0;
    for (const Atom& a : U.cells.at(cell_index)) acc = acc + g(a.state).scaled(a.weight);
    return acc;
}

XReal expectation_initial(const EmpiricalYoungMeasure& U, int space_cell,
                          const std::function<XReal(const ConservativeState&)>& g) {
    XReal acc = 0.0;
    for (const Atom& a : U.initial.at(space_cell)) acc = acc + g(a.state).scaled(a.weight);
    return acc;
}

ConservativeState mean_state(const EmpiricalYoungMeasure& U, int cell_index) {
    ConservativeState m;
    for (const Atom& a : U.cells.at(cell_index)) {
        m.rho += a.weight * a.state.rho;
        m.m.x += a.weight * a.state.m.x;
        m.m.y += a.weight * a.state.m.y;
        m.E += a.weight * a.state.E;
    }
    return m;
}

double measure_spread(const EmpiricalYoungMeasure& U, int cell_index) {
    const ConservativeState mean = mean_state(U, cell_index);
    double tr = 0.0;
    for (const Atom& a : U.cells.at(cell_index)) {
        const double dr = a.state.rho - mean.rho;
        const double dmx = a.state.m.x - mean.m.x;
        const double dmy = a.state.m.y - mean.m.y;
        const double dE = a.state.E - mean.E;
        tr += a.weight * (dr * dr + dmx * dmx + dmy * dmy + dE * dE);
    }
    return tr;
}

DefectLedger energy_defect(std::span<const FieldTrajectory> sweep,
                           const EmpiricalYoungMeasure& U, const GasParams& gas) {
    DefectLedger ledger;
    const int csc = U.space_cells();
    const double cvol = U.coarse_grid.cell_volume();

    // int <U0; E> dx
    double e0 = 0.0;
    for (int c = 0; c < csc; ++c)
        e0 += expectation_initial(U, c, [](const ConservativeState& s) {
                  return XReal(s.E);
              }).value() *
              cvol;

    std::vector<double> eU(U.nt, 0.0);
    for (int b = 0; b < U.nt; ++b) {
        for (int c = 0; c < csc; ++c)
            eU[b] += expectation(U, U.cell_index(b, c), [](const ConservativeState& s) {
                         return XReal(s.E);
                     }).value() *
                     cvol;
        ledger.times.push_back(U.block_times[b]);
        ledger.energy_defect.push_back(e0 - eU[b]);
    }

    // per-member gaps at block times (members share the sampling cadence)
    int coarsest = 0;
    for (std::size_t m = 1; m < sweep.size(); ++m)
        if (sweep[m].epsilon > sweep[coarsest].epsilon) coarsest = static_cast<int>(m);
    for (const FieldTrajectory& tr : sweep) {
        ledger.member_epsilon.push_back(tr.epsilon);
        std::vector<double> gap(U.nt, 0.0);
        const int nsamples = static_cast<int>(tr.times.size());
        std::vector<double> esum(U.nt, 0.0);
        std::vector<int> count(U.nt, 0);
        for (int k = 0; k < nsamples; ++k) {
            const int b = std::min(k * U.nt / nsamples, U.nt - 1);
            double e = 0.0;
            for (int c = 0; c < tr.grid.cells(); ++c) e += tr.states[k].E[c];
            esum[b] += e * tr.grid.cell_volume();
            ++count[b];
        }
        for (int b = 0; b < U.nt; ++b) gap[b] = esum[b] / count[b] - eU[b];
        ledger.member_gap.push_back(std::move(gap));
    }

    // concentration proxy: coarsest member's cell-averaged nonlinearity vs the
    // measure expectation, for m (x) m / rho and the pressure term
    const FieldTrajectory& cm = sweep[coarsest];
    ledger.concentration.assign(U.cells.size(), 0.0);
    const int nsamples = static_cast<int>(cm.times.size());
    std::vector<int> block_of(nsamples);
    for (int k = 0; k < nsamples; ++k)
        block_of[k] = std::min(k * U.nt / nsamples, U.nt - 1);

    auto tensor_obs = [&](const ConservativeState& s, int i, int j) {
        if (s.rho <= kVacuumFloor) return 0.0;
        return s.m[i] * s.m[j] / s.rho;
    };
    auto pressure_obs = [&](const ConservativeState& s) {
        if (s.rho <= kVacuumFloor) return 0.0;
        return (s.E - 0.5 * s.m.norm2() / s.rho) / gas.c_v;
    };

    const int dim = U.coarse_grid.dim;
    for (int b = 0; b < U.nt; ++b) {
        for (int cc = 0; cc < csc; ++cc) {
            // averages of the coarsest member over this coarse cell / block
            double avg_t[2][2] = {}, avg_p = 0.0;
            int cnt = 0;
            for (int k = 0; k < nsamples; ++k) {
                if (block_of[k] != b) continue;
                for (int c = 0; c < cm.grid.cells(); ++c) {
                    const int i = cm.grid.ix(c), j = cm.grid.iy(c);
                    int ci = std::min(static_cast<int>(cm.grid.center(0, i) / U.coarse_grid.dx[0]),
                                      U.coarse_grid.n[0] - 1);
                    int cj = dim == 2 ? std::min(static_cast<int>(cm.grid.center(1, j) /
                                                                  U.coarse_grid.dx[1]),
                                                 U.coarse_grid.n[1] - 1)
                                      : 0;
                    if (U.coarse_grid.index(ci, cj) != cc) continue;
                    const ConservativeState s = cm.states[k].state(c);
                    for (int a1 = 0; a1 < dim; ++a1)
                        for (int a2 = 0; a2 < dim; ++a2) avg_t[a1][a2] += tensor_obs(s, a1, a2);
                    avg_p += pressure_obs(s);
                    ++cnt;
                }
            }
            double mag = 0.0;
            if (cnt > 0) {
                for (int a1 = 0; a1 < dim; ++a1)
                    for (int a2 = 0; a2 < dim; ++a2) {
                        const double eu =
                            expectation(U, U.cell_index(b, cc),
                                        [&](const ConservativeState& s) {
                                            return XReal(tensor_obs(s, a1, a2));
                                        })
                                .value();
                        mag += std::abs(avg_t[a1][a2] / cnt - eu);
                    }
                const double ep = expectation(U, U.cell_index(b, cc),
                                              [&](const ConservativeState& s) {
                                                  return XReal(pressure_obs(s));
                                              })
                                      .value();
                mag += std::abs(avg_p / cnt - ep);
            }
            ledger.concentration[U.cell_index(b, cc)] = mag;
        }
    }
    // time weights: slab boundaries at midpoints between block times
    double mass = 0.0;
    const double horizon = U.block_span.back()[1];
    for (int b = 0; b < U.nt; ++b) {
        const double lo = b == 0 ? 0.0 : 0.5 * (U.block_times[b - 1] + U.block_times[b]);
        const double hi =
            b == U.nt - 1 ? horizon : 0.5 * (U.block_times[b] + U.block_times[b + 1]);
        const double wt = U.nt == 1 ? 1.0 : hi - lo;
        for (int cc = 0; cc < csc; ++cc)
            mass += ledger.concentration[U.cell_index(b, cc)] * cvol * wt;
    }
    ledger.concentration_mass = mass;
    return ledger;
}

} // namespace mvgas
