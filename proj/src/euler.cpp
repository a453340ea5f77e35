#include "mvgas/euler.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace mvgas {

EulerFluxV euler_physical_flux(const ConservativeState& state, const GasParams& gas,
                               int axis) {
    if (state.rho <= kVacuumFloor) {
        if (state.m.norm() > kVacuumFloor)
            throw NonPhysicalStateError("euler_physical_flux: vacuum with momentum");
        return {};
    }
    const double kin = 0.5 * state.m.norm2() / state.rho;
    const double eint = state.E - kin;
    if (eint < -kVacuumFloor * (1.0 + state.E))
        throw NegativeInternalEnergyError("euler_physical_flux: E below kinetic energy");
    const double p = std::max(eint, 0.0) / gas.c_v;
    const double ua = state.m[axis] / state.rho;
    EulerFluxV f;
    f.mass = state.m[axis];
    f.mom_x = state.m.x * ua + (axis == 0 ? p : 0.0);
    f.mom_y = state.m.y * ua + (axis == 1 ? p : 0.0);
    f.energy = (state.E + p) * ua;
    return f;
}

double max_wave_speed(const ConservativeState& state, const GasParams& gas, int axis) {
    if (state.rho <= kVacuumFloor) return 0.0;
    const double kin = 0.5 * state.m.norm2() / state.rho;
    const double theta = std::max(state.E - kin, 0.0) / (gas.c_v * state.rho);
    return std::abs(state.m[axis] / state.rho) + std::sqrt(gas.gamma * theta);
}

EulerFluxV rusanov_flux(const ConservativeState& left, const ConservativeState& right,
                        const GasParams& gas, int axis) {
    const EulerFluxV fl = euler_physical_flux(left, gas, axis);
    const EulerFluxV fr = euler_physical_flux(right, gas, axis);
    const double lam =
        std::max(max_wave_speed(left, gas, axis), max_wave_speed(right, gas, axis));
    EulerFluxV f;
    f.mass = 0.5 * (fl.mass + fr.mass) - 0.5 * lam * (right.rho - left.rho);
    f.mom_x = 0.5 * (fl.mom_x + fr.mom_x) - 0.5 * lam * (right.m.x - left.m.x);
    f.mom_y = 0.5 * (fl.mom_y + fr.mom_y) - 0.5 * lam * (right.m.y - left.m.y);
    f.energy = 0.5 * (fl.energy + fr.energy) - 0.5 * lam * (right.E - left.E);
    return f;
}

namespace {

ConservativeState mirror_state(const ConservativeState& s, int axis) {
    ConservativeState g = s;
    g.m[axis] = -g.m[axis];
    return g;
}

// div F accumulated into rhs arrays (negated), one axis at a time.
void accumulate_axis(const ConsField& f, const Grid& g, const GasParams& gas, int axis,
                     ConsField& rhs, Exec exec) {
    const int nx = g.n[0], ny = g.n[1];
    const int nl = axis == 0 ? nx : ny;                   // cells along the axis
    const int nlines = axis == 0 ? ny : nx;               // grid lines
    const int nfaces = g.bc == Bc::Periodic ? nl : nl + 1;
    const double inv_dx = 1.0 / g.dx[axis];
    const bool par = exec == Exec::Parallel;

    std::vector<EulerFluxV> flux(static_cast<std::size_t>(nfaces) * nlines);

    auto cell_at = [&](int line, int k) {
        return axis == 0 ? g.index(k, line) : g.index(line, k);
    };

#pragma omp parallel for collapse(2) if (par)
    for (int line = 0; line < nlines; ++line) {
        for (int fc = 0; fc < nfaces; ++fc) {
            ConservativeState L, R;
            if (g.bc == Bc::Periodic) {
                L = f.state(cell_at(line, (fc + nl - 1) % nl));
                R = f.state(cell_at(line, fc));
            } else {
                if (fc == 0) {
                    R = f.state(cell_at(line, 0));
                    L = mirror_state(R, axis);
                } else if (fc == nl) {
                    L = f.state(cell_at(line, nl - 1));
                    R = mirror_state(L, axis);
                } else {
                    L = f.state(cell_at(line, fc - 1));
                    R = f.state(cell_at(line, fc));
                }
            }
            flux[static_cast<std::size_t>(line) * nfaces + fc] =
                rusanov_flux(L, R, gas, axis);
        }
    }

#pragma omp parallel for collapse(2) if (par)
    for (int line = 0; line < nlines; ++line) {
        for (int k = 0; k < nl; ++k) {
            const int c = cell_at(line, k);
            const EulerFluxV& fm = flux[static_cast<std::size_t>(line) * nfaces + k];
            const EulerFluxV& fp =
                flux[static_cast<std::size_t>(line) * nfaces +
                     (g.bc == Bc::Periodic ? (k + 1) % nl : k + 1)];
            rhs.rho[c] -= (fp.mass - fm.mass) * inv_dx;
            rhs.mx[c] -= (fp.mom_x - fm.mom_x) * inv_dx;
            rhs.my[c] -= (fp.mom_y - fm.mom_y) * inv_dx;
            rhs.E[c] -= (fp.energy - fm.energy) * inv_dx;
        }
    }
}

void euler_rhs(const ConsField& f, const Grid& g, const GasParams& gas, ConsField& rhs,
               Exec exec) {
    rhs.resize(g.cells());
    for (int a = 0; a < g.dim; ++a) accumulate_axis(f, g, gas, a, rhs, exec);
}

bool field_admissible(const ConsField& f, Exec exec) {
    const int n = f.size();
    const bool par = exec == Exec::Parallel;
    bool ok = true;
#pragma omp parallel for reduction(&& : ok) if (par)
    for (int i = 0; i < n; ++i) {
        const bool fin = std::isfinite(f.rho[i]) && std::isfinite(f.E[i]) &&
                         std::isfinite(f.mx[i]) && std::isfinite(f.my[i]);
        bool cell_ok = fin && f.rho[i] > 0.0;
        if (cell_ok) {
            const double kin = 0.5 * (f.mx[i] * f.mx[i] + f.my[i] * f.my[i]) / f.rho[i];
            cell_ok = f.E[i] - kin > 0.0;
        }
        ok = ok && cell_ok;
    }
    return ok;
}

void axpy(ConsField& out, const ConsField& a, double ca, const ConsField& b, double cb,
          Exec exec) {
    const int n = a.size();
    const bool par = exec == Exec::Parallel;
#pragma omp parallel for if (par)
    for (int i = 0; i < n; ++i) {
        out.rho[i] = ca * a.rho[i] + cb * b.rho[i];
        out.mx[i] = ca * a.mx[i] + cb * b.mx[i];
        out.my[i] = ca * a.my[i] + cb * b.my[i];
        out.E[i] = ca * a.E[i] + cb * b.E[i];
    }
}

} // namespace

StepStats step_euler(ConsField& field, const Grid& grid, const GasParams& gas, double cfl,
                     Exec exec, double dt_cap) {
    if (!(cfl > 0.0 && cfl < 1.0)) throw DomainError("step_euler: cfl must be in (0,1)");
    const bool par = exec == Exec::Parallel;
    const int n = field.size();

    double lam_over_dx = 0.0;
#pragma omp parallel for reduction(max : lam_over_dx) if (par)
    for (int i = 0; i < n; ++i) {
        const ConservativeState s = field.state(i);
        double v = 0.0;
        for (int a = 0; a < grid.dim; ++a)
            v += max_wave_speed(s, gas, a) / grid.dx[a];
        lam_over_dx = std::max(lam_over_dx, v);
    }
    if (!std::isfinite(lam_over_dx) || lam_over_dx > 1e14) {
        std::ostringstream os;
        os << "step_euler: wave speed blow-up (max lambda/dx = " << lam_over_dx << ")";
        throw BlowUpError(os.str());
    }
    double dt = lam_over_dx > 0.0 ? cfl / lam_over_dx : (dt_cap > 0.0 ? dt_cap : 1e-3);
    if (dt_cap > 0.0) dt = std::min(dt, dt_cap);

    ConsField rhs, stage, out;
    StepStats stats;
    for (int attempt = 0;; ++attempt) {
        if (dt < 1e-13) {
            std::ostringstream os;
            os << "step_euler: dt underflow (dt = " << dt
               << ", max lambda/dx = " << lam_over_dx << ")";
            throw BlowUpError(os.str());
        }
        euler_rhs(field, grid, gas, rhs, exec);
        stage = field;
        axpy(stage, field, 1.0, rhs, dt, exec);
        bool ok = field_admissible(stage, exec);
        if (ok) {
            euler_rhs(stage, grid, gas, rhs, exec);
            out = stage;
            axpy(out, stage, 1.0, rhs, dt, exec);  // stage + dt L(stage)
            axpy(out, field, 0.5, out, 0.5, exec); // 0.5 field + 0.5 (...)
            ok = field_admissible(out, exec);
        }
        if (ok) {
            field = out;
            stats.dt = dt;
            stats.retries = attempt;
            return stats;
        }
        if (attempt >= 5) {
            std::ostringstream os;
            os << "step_euler: positivity lost after " << attempt + 1
               << " dt halvings (last dt = " << dt << ")";
            throw BlowUpError(os.str());
        }
        dt *= 0.5;
    }
}

FieldTrajectory run_euler(const ConsField& initial, const Grid& grid,
                          const GasParams& gas, const RunSpec& spec) {
    if (!(spec.t_end > 0.0) || !(spec.sample_dt > 0.0) || spec.sample_dt > spec.t_end + 1e-15)
        throw DomainError("run_euler: need 0 < sample_dt <= t_end");
    FieldTrajectory traj;
    traj.grid = grid;
    traj.model = ModelTag::Euler;
    traj.epsilon = 0.0;
    ConsField f = initial;
    traj.times.push_back(0.0);
    traj.states.push_back(f);
    double t = 0.0;
    int sample = 1;
    const int nsamples = static_cast<int>(std::round(spec.t_end / spec.sample_dt));
    while (sample <= nsamples) {
        const double target = sample * spec.sample_dt;
        while (t < target - 1e-13) {
            StepStats st = step_euler(f, grid, gas, spec.cfl, spec.exec, target - t);
            t += st.dt;
        }
        t = target;
        traj.times.push_back(target);
        traj.states.push_back(f);
        ++sample;
    }
    return traj;
}

} // namespace mvgas
