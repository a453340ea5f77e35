#include "mvgas/ns_entropy.hpp"

#include <cmath>
#include <sstream>

#include "stencil.hpp"

namespace mvgas {

void NSEntropyParams::validate(const GasParams& gas) const {
    if (epsilon < 0.0) throw DomainError("NSEntropyParams: epsilon must be >= 0");
    if (beta != 0.0 && beta < std::max(gas.gamma, 4.0) - 1e-12) {
        std::ostringstream os;
        os << "NSEntropyParams: beta = " << beta << " violates beta >= max(gamma, 4) = "
           << std::max(gas.gamma, 4.0);
        throw DomainError(os.str());
    }
    if (!(mu > 0.0)) throw DomainError("NSEntropyParams: mu must be > 0");
    if (eta < 0.0) throw DomainError("NSEntropyParams: eta must be >= 0");
    if (c_star != 0.0 || c_upper != 0.0) {
        if (!(c_star > 0.0) || !(c_star <= c_upper))
            throw DomainError("NSEntropyParams: need 0 < c_star <= c_upper");
    }
}

double recover_theta(double rho, double Z, const GasParams& gas, double floor) {
    if (rho < 0.0 || Z < 0.0) throw DomainError("recover_theta: negative input");
    if (rho <= floor) return 0.0;
    return std::pow(Z, gas.gamma) / rho;
}

ConservativeState ns_conservative_state(const NsField& f, int i, const GasParams& gas) {
    ConservativeState s;
    s.rho = f.rho[i];
    s.m = {f.mx[i], f.my[i], 0.0};
    const double kin = s.rho > 0.0 ? 0.5 * s.m.norm2() / s.rho : 0.0;
    s.E = kin + gas.c_v * std::pow(f.Z[i], gas.gamma);
    return s;
}

namespace {

struct NsFlux {
    double rho = 0.0, Z = 0.0, mx = 0.0, my = 0.0;
};

struct Workspace {
    std::vector<double> ux, uy;   // cell velocities
    std::vector<double> G;        // cell velocity gradients, [cell*4 + i*2 + a]
};

void compute_velocity(const NsField& f, Workspace& w, Exec exec) {
    const int n = f.size();
    w.ux.resize(n);
    w.uy.resize(n);
    const bool par = exec == Exec::Parallel;
#pragma omp parallel for if (par)
    for (int i = 0; i < n; ++i) {
        const double r = std::max(f.rho[i], kVacuumFloor);
        w.ux[i] = f.mx[i] / r;
        w.uy[i] = f.my[i] / r;
    }
}

void compute_gradients(const Grid& g, Workspace& w, Exec exec) {
    const int n = g.cells();
    w.G.resize(static_cast<std::size_t>(n) * 4);  // only the dim^2 block is read
    const bool par = exec == Exec::Parallel;
#pragma omp parallel for if (par)
    for (int c = 0; c < n; ++c) {
        for (int a = 0; a < g.dim; ++a) {
            w.G[c * 4 + 0 * 2 + a] = detail::grad_velocity(g, w.ux, 0, c, a);
            if (g.dim == 2) w.G[c * 4 + 1 * 2 + a] = detail::grad_velocity(g, w.uy, 1, c, a);
        }
    }
}

// rhs += -div F along one axis (hyperbolic Rusanov block + viscous face flux).
void ns_accumulate_axis(const NsField& f, const Grid& g, const NSEntropyParams& prm,
                        const GasParams& gas, const Workspace& w, int axis, NsField& rhs,
                        Exec exec) {
    const int nl = g.n[axis];
    const int nlines = axis == 0 ? g.n[1] : g.n[0];
    const int nfaces = g.bc == Bc::Periodic ? nl : nl + 1;
    const double inv_dx = 1.0 / g.dx[axis];
    const bool par = exec == Exec::Parallel;
    const bool viscous = prm.epsilon > 0.0;

    std::vector<NsFlux> flux(static_cast<std::size_t>(nfaces) * nlines);

    auto cell_at = [&](int line, int k) {
        return axis == 0 ? g.index(k, line) : g.index(line, k);
    };

#pragma omp parallel for collapse(2) if (par)
    for (int line = 0; line < nlines; ++line) {
        for (int fc = 0; fc < nfaces; ++fc) {
            int cl, cr;
            bool wall_l = false, wall_r = false;
            if (g.bc == Bc::Periodic) {
                cl = cell_at(line, (fc + nl - 1) % nl);
                cr = cell_at(line, fc);
            } else if (fc == 0) {
                cl = cr = cell_at(line, 0);
                wall_l = true;
            } else if (fc == nl) {
                cl = cr = cell_at(line, nl - 1);
                wall_r = true;
            } else {
                cl = cell_at(line, fc - 1);
                cr = cell_at(line, fc);
            }

            double rhoL = f.rho[cl], ZL = f.Z[cl], mL[2] = {f.mx[cl], f.my[cl]};
            double rhoR = f.rho[cr], ZR = f.Z[cr], mR[2] = {f.mx[cr], f.my[cr]};
            if (wall_l) mL[axis] = -mL[axis];  // ghost is the mirrored interior cell
            if (wall_r) mR[axis] = -mR[axis];

            const double uL = mL[axis] / std::max(rhoL, kVacuumFloor);
            const double uR = mR[axis] / std::max(rhoR, kVacuumFloor);
            const double ZgL = std::pow(ZL, gas.gamma), ZgR = std::pow(ZR, gas.gamma);
            const double ZbL = prm.epsilon > 0.0 ? std::pow(ZL, prm.beta) : 0.0;
            const double ZbR = prm.epsilon > 0.0 ? std::pow(ZR, prm.beta) : 0.0;
            const double pL = ZgL + prm.epsilon * ZbL;
            const double pR = ZgR + prm.epsilon * ZbR;
            const double cL = std::sqrt((gas.gamma * ZgL + prm.epsilon * prm.beta * ZbL) /
                                        std::max(rhoL, kVacuumFloor));
            const double cR = std::sqrt((gas.gamma * ZgR + prm.epsilon * prm.beta * ZbR) /
                                        std::max(rhoR, kVacuumFloor));
            // one dissipation speed for the whole block keeps Z/rho a convex
            // combination of neighbor ratios
            const double lam = std::max(std::abs(uL) + cL, std::abs(uR) + cR);

            NsFlux F;
            F.rho = 0.5 * (rhoL * uL + rhoR * uR) - 0.5 * lam * (rhoR - rhoL);
            F.Z = 0.5 * (ZL * uL + ZR * uR) - 0.5 * lam * (ZR - ZL);
            F.mx = 0.5 * (mL[0] * uL + mR[0] * uR + (axis == 0 ? pL + pR : 0.0)) -
                   0.5 * lam * (mR[0] - mL[0]);
            F.my = 0.5 * (mL[1] * uL + mR[1] * uR + (axis == 1 ? pL + pR : 0.0)) -
                   0.5 * lam * (mR[1] - mL[1]);

            if (viscous) {
                // face stress column S(:, axis); normal derivative from the
                // compact face difference, cross terms from cell averages
                double Gf[2][2] = {};
                const double uxl = wall_l && axis == 0 ? -w.ux[cl] : w.ux[cl];
                const double uxr = wall_r && axis == 0 ? -w.ux[cr] : w.ux[cr];
                const double uyl = wall_l && axis == 1 ? -w.uy[cl] : w.uy[cl];
                const double uyr = wall_r && axis == 1 ? -w.uy[cr] : w.uy[cr];
                for (int i = 0; i < g.dim; ++i)
                    for (int a2 = 0; a2 < g.dim; ++a2)
                        Gf[i][a2] = 0.5 * (w.G[cl * 4 + i * 2 + a2] + w.G[cr * 4 + i * 2 + a2]);
                Gf[0][axis] = (uxr - uxl) * inv_dx;
                if (g.dim == 2) Gf[1][axis] = (uyr - uyl) * inv_dx;

                double div = Gf[0][0];
                if (g.dim == 2) div += Gf[1][1];
                const double S_x_axis =
                    prm.mu * (Gf[0][axis] + Gf[axis][0] - (axis == 0 ? 2.0 / 3.0 * div : 0.0)) +
                    (axis == 0 ? prm.eta * div : 0.0);
                F.mx -= prm.epsilon * S_x_axis;
                if (g.dim == 2) {
                    const double S_y_axis =
                        prm.mu * (Gf[1][axis] + Gf[axis][1] -
                                  (axis == 1 ? 2.0 / 3.0 * div : 0.0)) +
                        (axis == 1 ? prm.eta * div : 0.0);
                    F.my -= prm.epsilon * S_y_axis;
                }
            }
            flux[static_cast<std::size_t>(line) * nfaces + fc] = F;
        }
    }

#pragma omp parallel for collapse(2) if (par)
    for (int line = 0; line < nlines; ++line) {
        for (int k = 0; k < nl; ++k) {
            const int c = cell_at(line, k);
            const NsFlux& fm = flux[static_cast<std::size_t>(line) * nfaces + k];
            const NsFlux& fp = flux[static_cast<std::size_t>(line) * nfaces +
                                    (g.bc == Bc::Periodic ? (k + 1) % nl : k + 1)];
            rhs.rho[c] -= (fp.rho - fm.rho) * inv_dx;
            rhs.Z[c] -= (fp.Z - fm.Z) * inv_dx;
            rhs.mx[c] -= (fp.mx - fm.mx) * inv_dx;
            rhs.my[c] -= (fp.my - fm.my) * inv_dx;
        }
    }
}

void ns_rhs(const NsField& f, const Grid& g, const NSEntropyParams& prm,
            const GasParams& gas, Workspace& w, NsField& rhs, Exec exec) {
    rhs.resize(g.cells());
    compute_velocity(f, w, exec);
    if (prm.epsilon > 0.0) compute_gradients(g, w, exec);
    for (int a = 0; a < g.dim; ++a) ns_accumulate_axis(f, g, prm, gas, w, a, rhs, exec);
}

bool ns_admissible(const NsField& f, Exec exec) {
    const int n = f.size();
    const bool par = exec == Exec::Parallel;
    bool ok = true;
#pragma omp parallel for reduction(&& : ok) if (par)
    for (int i = 0; i < n; ++i) {
        const bool fin = std::isfinite(f.rho[i]) && std::isfinite(f.Z[i]) &&
                         std::isfinite(f.mx[i]) && std::isfinite(f.my[i]);
        ok = ok && fin && f.rho[i] > 0.0 && f.Z[i] > 0.0;
    }
    return ok;
}

void ns_axpy(NsField& out, const NsField& a, double ca, const NsField& b, double cb,
             Exec exec) {
    const int n = a.size();
    const bool par = exec == Exec::Parallel;
#pragma omp parallel for if (par)
    for (int i = 0; i < n; ++i) {
        out.rho[i] = ca * a.rho[i] + cb * b.rho[i];
        out.Z[i] = ca * a.Z[i] + cb * b.Z[i];
        out.mx[i] = ca * a.mx[i] + cb * b.mx[i];
        out.my[i] = ca * a.my[i] + cb * b.my[i];
    }
}

void check_ratio_window(const NsField& f, const NSEntropyParams& prm) {
    if (prm.c_star == 0.0 && prm.c_upper == 0.0) return;
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < f.size(); ++i) {
        const double r = f.Z[i] / f.rho[i];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    const double tol = 1e-10;
    if (lo < prm.c_star - tol * (1.0 + prm.c_star) ||
        hi > prm.c_upper + tol * (1.0 + prm.c_upper)) {
        std::ostringstream os;
        os << "step_ns_entropy: ratio bound violated: Z/rho in [" << lo << ", " << hi
           << "] vs window [" << prm.c_star << ", " << prm.c_upper << "]";
        throw InvariantViolationError(os.str());
    }
}

} // namespace

StepStats step_ns_entropy(NsField& field, const Grid& grid, NSEntropyParams prm,
                          const GasParams& gas, double cfl, Exec exec, double dt_cap,
                          double* dissipation_accum) {
    if (!(cfl > 0.0 && cfl < 1.0))
        throw DomainError("step_ns_entropy: cfl must be in (0,1)");
    if (prm.beta == 0.0) prm.beta = std::max(gas.gamma, 4.0);
    prm.validate(gas);
    const bool par = exec == Exec::Parallel;
    const int n = field.size();

    Workspace w;
    compute_velocity(field, w, exec);

    double lam_over_dx = 0.0;
    double rho_min = 1e300;
#pragma omp parallel for reduction(max : lam_over_dx) reduction(min : rho_min) if (par)
    for (int i = 0; i < n; ++i) {
        const double rho = std::max(field.rho[i], kVacuumFloor);
        const double Zg = std::pow(field.Z[i], gas.gamma);
        const double Zb = prm.epsilon > 0.0 ? std::pow(field.Z[i], prm.beta) : 0.0;
        const double c = std::sqrt((gas.gamma * Zg + prm.epsilon * prm.beta * Zb) / rho);
        double v = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            const double ua = (a == 0 ? field.mx[i] : field.my[i]) / rho;
            v += (std::abs(ua) + c) / grid.dx[a];
        }
        lam_over_dx = std::max(lam_over_dx, v);
        rho_min = std::min(rho_min, field.rho[i]);
    }
    if (!std::isfinite(lam_over_dx) || lam_over_dx > 1e14)
        throw BlowUpError("step_ns_entropy: wave speed blow-up");

    double dt = lam_over_dx > 0.0 ? cfl / lam_over_dx : 1e-3;
    if (prm.epsilon > 0.0) {
        const double nu = (4.0 / 3.0 * prm.mu + prm.eta) / std::max(rho_min, kVacuumFloor);
        double inv_dx2 = 0.0;
        for (int a = 0; a < grid.dim; ++a) inv_dx2 += 1.0 / (grid.dx[a] * grid.dx[a]);
        dt = std::min(dt, 0.25 / (prm.epsilon * nu * inv_dx2));
    }
    if (dt_cap > 0.0) dt = std::min(dt, dt_cap);

    NsField rhs, stage, out;
    StepStats stats;
    for (int attempt = 0;; ++attempt) {
        if (dt < 1e-13)
            throw BlowUpError("step_ns_entropy: dt underflow");
        ns_rhs(field, grid, prm, gas, w, rhs, exec);

        double dissipated = 0.0;
        if (dissipation_accum && prm.epsilon > 0.0) {
            // pre-step physical dissipation eps S(grad u) : grad u
            compute_gradients(grid, w, exec);
            double sum = 0.0;
            for (int c = 0; c < n; ++c) {
                double G[2][2] = {{w.G[c * 4 + 0], w.G[c * 4 + 1]},
                                  {w.G[c * 4 + 2], w.G[c * 4 + 3]}};
                sum += detail::stress_dissipation(G, prm.mu, prm.eta, grid.dim);
            }
            dissipated = prm.epsilon * sum * grid.cell_volume();
        }

        stage = field;
        ns_axpy(stage, field, 1.0, rhs, dt, exec);
        bool ok = ns_admissible(stage, exec);
        if (ok) {
            ns_rhs(stage, grid, prm, gas, w, rhs, exec);
            out = stage;
            ns_axpy(out, stage, 1.0, rhs, dt, exec);
            ns_axpy(out, field, 0.5, out, 0.5, exec);
            ok = ns_admissible(out, exec);
        }
        if (ok) {
            field = out;
            check_ratio_window(field, prm);
            if (dissipation_accum) *dissipation_accum += dt * dissipated;
            stats.dt = dt;
            stats.retries = attempt;
            return stats;
        }
        if (attempt >= 5)
            throw BlowUpError("step_ns_entropy: positivity lost after dt halvings");
        dt *= 0.5;
    }
}

NsRunResult run_ns_entropy(const NsField& initial, const Grid& grid,
                           NSEntropyParams params, const GasParams& gas,
                           const RunSpec& spec, const std::vector<ChiSpec>& battery) {
    if (initial.size() != grid.cells())
        throw DomainError("run_ns_entropy: field size != grid cells");
    // derive the ratio window from the data when unset
    if (params.c_star == 0.0 && params.c_upper == 0.0) {
        double lo = 1e300, hi = -1e300;
        for (int i = 0; i < initial.size(); ++i) {
            const double r = initial.Z[i] / std::max(initial.rho[i], kVacuumFloor);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        params.c_star = lo;
        params.c_upper = hi;
    }
    if (params.beta == 0.0) params.beta = std::max(gas.gamma, 4.0);
    params.validate(gas);
    for (int i = 0; i < initial.size(); ++i) {
        if (!(initial.rho[i] > 0.0) || !(initial.Z[i] > 0.0))
            throw DomainError("run_ns_entropy: initial data must be strictly positive");
        const double r = initial.Z[i] / initial.rho[i];
        if (r < params.c_star - 1e-12 || r > params.c_upper + 1e-12) {
            std::ostringstream os;
            os << "run_ns_entropy: initial ratio Z/rho = " << r << " outside ["
               << params.c_star << ", " << params.c_upper << "]";
            throw DomainError(os.str());
        }
    }

    NsRunResult res;
    res.traj.grid = grid;
    res.traj.model = ModelTag::NsEntropy;
    res.traj.epsilon = params.epsilon;
    for (const ChiSpec& chi : battery) res.ledger.chi_names.push_back(chi.name);
    res.ledger.chi_series.resize(battery.size());

    NsField f = initial;
    double viscous_cum = 0.0;

    auto record = [&](double t) {
        ConsField snap;
        snap.resize(grid.cells());
        std::vector<double> Zcopy = f.Z;
        double e_reg = 0.0;
        for (int i = 0; i < grid.cells(); ++i) {
            snap.set_state(i, ns_conservative_state(f, i, gas));
            e_reg += snap.E[i];
            if (params.epsilon > 0.0)
                e_reg += params.epsilon / (params.beta - 1.0) * std::pow(f.Z[i], params.beta);
        }
        res.traj.times.push_back(t);
        res.traj.states.push_back(std::move(snap));
        res.traj.aux_Z.push_back(std::move(Zcopy));
        res.ledger.times.push_back(t);
        res.ledger.energy_reg.push_back(e_reg * grid.cell_volume());
        res.ledger.viscous_cum.push_back(viscous_cum);
        for (std::size_t b = 0; b < battery.size(); ++b) {
            double s_int = 0.0;
            for (int i = 0; i < grid.cells(); ++i) {
                const double s = (gas.c_v + 1.0) * std::log(f.Z[i] / f.rho[i]);
                s_int += f.rho[i] * battery[b].eval(s);
            }
            res.ledger.chi_series[b].push_back(s_int * grid.cell_volume());
        }
    };

    record(0.0);
    double t = 0.0;
    const int nsamples = static_cast<int>(std::round(spec.t_end / spec.sample_dt));
    for (int sample = 1; sample <= nsamples; ++sample) {
        const double target = sample * spec.sample_dt;
        while (t < target - 1e-13) {
            StepStats st = step_ns_entropy(f, grid, params, gas, spec.cfl, spec.exec,
                                           target - t, &viscous_cum);
            t += st.dt;
        }
        t = target;
        record(target);
    }
    return res;
}

} // namespace mvgas
