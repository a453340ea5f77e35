#include "mvgas/brenner.hpp"

#include <cmath>
#include <sstream>

#include "stencil.hpp"

namespace mvgas {

void BrennerParams::validate() const {
    if (epsilon < 0.0) throw DomainError("BrennerParams: epsilon must be >= 0");
    if (!(kappa_coeff > 0.0)) throw DomainError("BrennerParams: kappa_coeff must be > 0");
    if (!(mu_coeff > 0.0)) throw DomainError("BrennerParams: mu_coeff must be > 0");
    if (eta != 0.0) throw DomainError("BrennerParams: eta must be identically 0");
    if (!(smoothness_bound > 0.0))
        throw DomainError("BrennerParams: smoothness_bound must be > 0");
}

double BrennerParams::mu(double rho, double theta) const {
    switch (mu_law) {
        case MuLaw::Rho: return mu_coeff * rho;
        case MuLaw::InvTheta: return mu_coeff / std::max(theta, kVacuumFloor);
        case MuLaw::RhoPlusInvTheta:
            return mu_coeff * (rho + 1.0 / std::max(theta, kVacuumFloor));
    }
    return mu_coeff * rho;
}

VelocityField mass_velocity(const VelocityField& u, const std::vector<double>& rho,
                            const BrennerParams& params, const GasParams& gas,
                            const Grid& grid) {
    params.validate();
    const int n = grid.cells();
    if (static_cast<int>(rho.size()) != n || static_cast<int>(u.x.size()) != n)
        throw DomainError("mass_velocity: field size != grid cells");
    for (int i = 0; i < n; ++i)
        if (rho[i] <= kVacuumFloor) {
            std::ostringstream os;
            os << "mass_velocity: vacuum cell " << i << " (grad log rho singular)";
            throw DomainError(os.str());
        }
    VelocityField um = u;
    if (params.epsilon == 0.0) return um;
    const double coef = params.epsilon * params.kappa_coeff / gas.c_v;
    for (int c = 0; c < n; ++c) {
        // kappa/(c_v rho) grad log rho = (kappa_coeff/c_v) grad rho / rho
        um.x[c] = u.x[c] - coef * detail::grad_even(grid, rho, c, 0) / rho[c];
        if (grid.dim == 2)
            um.y[c] = u.y[c] - coef * detail::grad_even(grid, rho, c, 1) / rho[c];
    }
    return um;
}

namespace {

struct BrWork {
    std::vector<double> ux, uy, theta;
    std::vector<double> G;  // velocity gradients [cell*4 + i*2 + a]
};

void compute_derived(const ConsField& f, const GasParams& gas, BrWork& w, Exec exec) {
    const int n = f.size();
    w.ux.resize(n);
    w.uy.resize(n);
    w.theta.resize(n);
    const bool par = exec == Exec::Parallel;
#pragma omp parallel for if (par)
    for (int i = 0; i < n; ++i) {
        const double r = std::max(f.rho[i], kVacuumFloor);
        w.ux[i] = f.mx[i] / r;
        w.uy[i] = f.my[i] / r;
        const double kin = 0.5 * (f.mx[i] * f.mx[i] + f.my[i] * f.my[i]) / r;
        w.theta[i] = std::max(f.E[i] - kin, 0.0) / (gas.c_v * r);
    }
}

void compute_gradients(const Grid& g, BrWork& w, Exec exec) {
    const int n = g.cells();
    w.G.resize(static_cast<std::size_t>(n) * 4);  // only the dim^2 block is read
    const bool par = exec == Exec::Parallel;
#pragma omp parallel for if (par)
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < g.dim; ++a) {
            w.G[c * 4 + 0 * 2 + a] = detail::grad_velocity(g, w.ux, 0, c, a);
            if (g.dim == 2) w.G[c * 4 + 1 * 2 + a] = detail::grad_velocity(g, w.uy, 1, c, a);
        }
}

struct BrFlux {
    double rho = 0.0, mx = 0.0, my = 0.0, E = 0.0;
};

void br_accumulate_axis(const ConsField& f, const Grid& g, const BrennerParams& prm,
                        const GasParams& gas, const BrWork& w, int axis, ConsField& rhs,
                        Exec exec) {
    const int nl = g.n[axis];
    const int nlines = axis == 0 ? g.n[1] : g.n[0];
    const int nfaces = g.bc == Bc::Periodic ? nl : nl + 1;
    const double inv_dx = 1.0 / g.dx[axis];
    const bool par = exec == Exec::Parallel;
    const double dcoef = prm.epsilon * prm.kappa_coeff / gas.c_v;

    std::vector<BrFlux> flux(static_cast<std::size_t>(nfaces) * nlines);

    auto cell_at = [&](int line, int k) {
        return axis == 0 ? g.index(k, line) : g.index(line, k);
    };

#pragma omp parallel for collapse(2) if (par)
    for (int line = 0; line < nlines; ++line) {
        for (int fc = 0; fc < nfaces; ++fc) {
            int cl, cr;
            bool wall = false;
            if (g.bc == Bc::Periodic) {
                cl = cell_at(line, (fc + nl - 1) % nl);
                cr = cell_at(line, fc);
            } else if (fc == 0 || fc == nl) {
                cl = cr = cell_at(line, fc == 0 ? 0 : nl - 1);
                wall = true;
            } else {
                cl = cell_at(line, fc - 1);
                cr = cell_at(line, fc);
            }

            // convective Euler block with Rusanov dissipation
            double mL[2] = {f.mx[cl], f.my[cl]}, mR[2] = {f.mx[cr], f.my[cr]};
            double EL = f.E[cl], ER = f.E[cr];
            double rhoL = f.rho[cl], rhoR = f.rho[cr];
            double uxL = w.ux[cl], uxR = w.ux[cr], uyL = w.uy[cl], uyR = w.uy[cr];
            if (wall) {
                // ghost = mirrored interior cell; normal momentum flips
                if (fc == 0) {
                    (axis == 0 ? mL[0] : mL[1]) *= -1.0;
                    (axis == 0 ? uxL : uyL) *= -1.0;
                } else {
                    (axis == 0 ? mR[0] : mR[1]) *= -1.0;
                    (axis == 0 ? uxR : uyR) *= -1.0;
                }
            }
            const double uL = axis == 0 ? uxL : uyL;
            const double uR = axis == 0 ? uxR : uyR;
            const double thL = w.theta[cl], thR = w.theta[cr];
            const double pL = rhoL * thL, pR = rhoR * thR;
            const double lam = std::max(std::abs(uL) + std::sqrt(gas.gamma * thL),
                                        std::abs(uR) + std::sqrt(gas.gamma * thR));
            BrFlux F;
            F.rho = 0.5 * (rhoL * uL + rhoR * uR) - 0.5 * lam * (rhoR - rhoL);
            F.mx = 0.5 * (mL[0] * uL + mR[0] * uR + (axis == 0 ? pL + pR : 0.0)) -
                   0.5 * lam * (mR[0] - mL[0]);
            F.my = 0.5 * (mL[1] * uL + mR[1] * uR + (axis == 1 ? pL + pR : 0.0)) -
                   0.5 * lam * (mR[1] - mL[1]);
            F.E = 0.5 * ((EL + pL) * uL + (ER + pR) * uR) - 0.5 * lam * (ER - EL);

            if (prm.epsilon > 0.0) {
                // mirror ghosts keep rho/theta even: wall differences vanish,
                // matching the no-flux conditions grad rho . n = q . n = 0
                const double drho = wall ? 0.0 : (rhoR - rhoL) * inv_dx;
                const double dth = wall ? 0.0 : (thR - thL) * inv_dx;
                const double rho_f = 0.5 * (rhoL + rhoR);
                const double th_f = 0.5 * (thL + thR);
                const double ux_f = 0.5 * (uxL + uxR);
                const double uy_f = 0.5 * (uyL + uyR);
                const double E_over_rho_f = 0.5 * (EL / rhoL + ER / rhoR);
                const double kappa_f = prm.kappa_coeff * rho_f;
                const double mu_f = prm.mu(rho_f, th_f);

                // kappa grad log rho = kappa_coeff grad rho
                F.rho -= dcoef * drho;
                F.mx -= dcoef * ux_f * drho;
                F.my -= dcoef * uy_f * drho;
                F.E -= dcoef * E_over_rho_f * drho;       // E u_m correction
                F.E -= prm.epsilon * kappa_f * dth;       // Fourier heat flux

                // viscous stress column S(:, axis), eta = 0
                double Gf[2][2] = {};
                for (int i = 0; i < g.dim; ++i)
                    for (int a2 = 0; a2 < g.dim; ++a2)
                        Gf[i][a2] =
                            0.5 * (w.G[cl * 4 + i * 2 + a2] + w.G[cr * 4 + i * 2 + a2]);
                const double duxn = wall && axis == 0 ? (uxR - uxL) * inv_dx
                                                      : (w.ux[cr] - w.ux[cl]) * inv_dx;
                const double duyn = wall && axis == 1 ? (uyR - uyL) * inv_dx
                                                      : (w.uy[cr] - w.uy[cl]) * inv_dx;
                if (!wall || axis == 0) Gf[0][axis] = duxn;
                if (g.dim == 2 && (!wall || axis == 1)) Gf[1][axis] = duyn;

                double div = Gf[0][0];
                if (g.dim == 2) div += Gf[1][1];
                double S_col[2];
                S_col[0] = mu_f * (Gf[0][axis] + Gf[axis][0] -
                                   (axis == 0 ? 2.0 / 3.0 * div : 0.0));
                S_col[1] = g.dim == 2 ? mu_f * (Gf[1][axis] + Gf[axis][1] -
                                                (axis == 1 ? 2.0 / 3.0 * div : 0.0))
                                      : 0.0;
                if (wall) S_col[axis == 0 ? 1 : 0] = 0.0;  // complete slip: no shear

                F.mx -= prm.epsilon * S_col[0];
                if (g.dim == 2) F.my -= prm.epsilon * S_col[1];
                F.E -= prm.epsilon * (S_col[0] * ux_f + S_col[1] * uy_f);
            }
            flux[static_cast<std::size_t>(line) * nfaces + fc] = F;
        }
    }

#pragma omp parallel for collapse(2) if (par)
    for (int line = 0; line < nlines; ++line) {
        for (int k = 0; k < nl; ++k) {
            const int c = cell_at(line, k);
            const BrFlux& fm = flux[static_cast<std::size_t>(line) * nfaces + k];
            const BrFlux& fp = flux[static_cast<std::size_t>(line) * nfaces +
                                    (g.bc == Bc::Periodic ? (k + 1) % nl : k + 1)];
            rhs.rho[c] -= (fp.rho - fm.rho) * inv_dx;
            rhs.mx[c] -= (fp.mx - fm.mx) * inv_dx;
            rhs.my[c] -= (fp.my - fm.my) * inv_dx;
            rhs.E[c] -= (fp.E - fm.E) * inv_dx;
        }
    }
}

void br_rhs(const ConsField& f, const Grid& g, const BrennerParams& prm,
            const GasParams& gas, BrWork& w, ConsField& rhs, Exec exec) {
    rhs.resize(g.cells());
    compute_derived(f, gas, w, exec);
    if (prm.epsilon > 0.0) compute_gradients(g, w, exec);
    for (int a = 0; a < g.dim; ++a) br_accumulate_axis(f, g, prm, gas, w, a, rhs, exec);
}

bool br_admissible(const ConsField& f, Exec exec) {
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

void br_axpy(ConsField& out, const ConsField& a, double ca, const ConsField& b, double cb,
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

StepStats step_brenner(ConsField& field, const Grid& grid, const BrennerParams& prm,
                       const GasParams& gas, double cfl, Exec exec, double dt_cap) {
    if (!(cfl > 0.0 && cfl < 1.0)) throw DomainError("step_brenner: cfl must be in (0,1)");
    prm.validate();
    const bool par = exec == Exec::Parallel;
    const int n = field.size();

    double lam_over_dx = 0.0;
    double rho_min = 1e300, mu_over_rho_max = 0.0;
#pragma omp parallel for reduction(max : lam_over_dx, mu_over_rho_max) \
    reduction(min : rho_min) if (par)
    for (int i = 0; i < n; ++i) {
        const double rho = std::max(field.rho[i], kVacuumFloor);
        const double kin = 0.5 * (field.mx[i] * field.mx[i] + field.my[i] * field.my[i]) / rho;
        const double theta = std::max(field.E[i] - kin, 0.0) / (gas.c_v * rho);
        const double c = std::sqrt(gas.gamma * theta);
        double v = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            const double ua = (a == 0 ? field.mx[i] : field.my[i]) / rho;
            v += (std::abs(ua) + c) / grid.dx[a];
        }
        lam_over_dx = std::max(lam_over_dx, v);
        rho_min = std::min(rho_min, field.rho[i]);
        mu_over_rho_max = std::max(mu_over_rho_max, prm.mu(rho, theta) / rho);
    }
    if (!std::isfinite(lam_over_dx) || lam_over_dx > 1e14)
        throw BlowUpError("step_brenner: wave speed blow-up");

    double dt = lam_over_dx > 0.0 ? cfl / lam_over_dx : 1e-3;
    if (prm.epsilon > 0.0) {
        const double D = std::max(prm.kappa_coeff / gas.c_v, 4.0 / 3.0 * mu_over_rho_max);
        double inv_dx2 = 0.0;
        for (int a = 0; a < grid.dim; ++a) inv_dx2 += 1.0 / (grid.dx[a] * grid.dx[a]);
        dt = std::min(dt, 0.25 / (prm.epsilon * D * inv_dx2));
    }
    if (dt_cap > 0.0) dt = std::min(dt, dt_cap);

    BrWork w;
    ConsField rhs, stage, out;
    StepStats stats;
    for (int attempt = 0;; ++attempt) {
        if (dt < 1e-13) throw BlowUpError("step_brenner: dt underflow");
        br_rhs(field, grid, prm, gas, w, rhs, exec);
        stage = field;
        br_axpy(stage, field, 1.0, rhs, dt, exec);
        bool ok = br_admissible(stage, exec);
        if (ok) {
            br_rhs(stage, grid, prm, gas, w, rhs, exec);
            out = stage;
            br_axpy(out, stage, 1.0, rhs, dt, exec);
            br_axpy(out, field, 0.5, out, 0.5, exec);
            ok = br_admissible(out, exec);
        }
        if (ok) {
            field = out;
            stats.dt = dt;
            stats.retries = attempt;
            return stats;
        }
        if (attempt >= 5)
            throw BlowUpError("step_brenner: positivity lost after dt halvings");
        dt *= 0.5;
    }
}

EntropyProduction entropy_production_terms(const ConsField& field, const Grid& grid,
                                           const BrennerParams& prm, const GasParams& gas,
                                           const ChiSpec& chi) {
    prm.validate();
    if (!chi.deriv || !chi.deriv2)
        throw DomainError("entropy_production_terms: chi needs chi' and chi''");
    const int n = grid.cells();
    BrWork w;
    compute_derived(field, gas, w, Exec::Serial);
    compute_gradients(grid, w, Exec::Serial);

    std::vector<double> log_rho(n), log_theta(n), s(n);
    for (int i = 0; i < n; ++i) {
        log_rho[i] = std::log(std::max(field.rho[i], kVacuumFloor));
        log_theta[i] = std::log(std::max(w.theta[i], kVacuumFloor));
        s[i] = gas.c_v * log_theta[i] - log_rho[i];
    }

    EntropyProduction out;
    out.stress.resize(n);
    out.heat.resize(n);
    out.mass_diff.resize(n);
    out.renorm.resize(n);
    const double vol = grid.cell_volume();
    for (int c = 0; c < n; ++c) {
        const double dchi = chi.deriv(s[c]);
        const double d2chi = chi.deriv2(s[c]);
        const double kappa = prm.kappa_coeff * field.rho[c];
        double G[2][2] = {{w.G[c * 4 + 0], w.G[c * 4 + 1]},
                          {w.G[c * 4 + 2], w.G[c * 4 + 3]}};
        const double sd = detail::stress_dissipation(G, prm.mu(field.rho[c], w.theta[c]),
                                                     0.0, grid.dim);
        double glt2 = 0.0, glr2 = 0.0, gs2 = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            const double glt = detail::grad_even(grid, log_theta, c, a);
            const double glr = detail::grad_even(grid, log_rho, c, a);
            const double gs = detail::grad_even(grid, s, c, a);
            glt2 += glt * glt;
            glr2 += glr * glr;
            gs2 += gs * gs;
        }
        out.stress[c] = prm.epsilon * dchi / std::max(w.theta[c], kVacuumFloor) * sd;
        out.heat[c] = prm.epsilon * kappa * dchi * glt2;
        out.mass_diff[c] = prm.epsilon * dchi * kappa / gas.c_v * glr2;
        out.renorm[c] = -prm.epsilon * d2chi * kappa / gas.c_v * gs2;
        for (double* term : {&out.stress[c], &out.heat[c], &out.mass_diff[c], &out.renorm[c]})
            if (*term < -1e-12) {
                std::ostringstream os;
                os << "entropy_production_terms: negative production " << *term
                   << " at cell " << c << " (chi '" << chi.name << "' inadmissible here)";
                throw InvariantViolationError(os.str());
            }
        out.stress_int += out.stress[c] * vol;
        out.heat_int += out.heat[c] * vol;
        out.mass_diff_int += out.mass_diff[c] * vol;
        out.renorm_int += out.renorm[c] * vol;
    }
    return out;
}

DissipativeMagnitudes dissipative_term_magnitudes(const ConsField& f, const Grid& grid,
                                                  const BrennerParams& prm,
                                                  const GasParams& gas) {
    DissipativeMagnitudes out;
    if (prm.epsilon == 0.0) return out;
    BrWork w;
    compute_derived(f, gas, w, Exec::Serial);
    compute_gradients(grid, w, Exec::Serial);
    std::vector<double> log_theta(grid.cells());
    for (int i = 0; i < grid.cells(); ++i)
        log_theta[i] = std::log(std::max(w.theta[i], kVacuumFloor));
    double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0, budget = 0.0;
    for (int c = 0; c < grid.cells(); ++c) {
        const double kappa = prm.kappa_coeff * f.rho[c];
        const double mu_c = prm.mu(f.rho[c], w.theta[c]);
        double grho2 = 0.0, glt2 = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            const double gr = detail::grad_even(grid, f.rho, c, a);
            const double gt = detail::grad_even(grid, log_theta, c, a);
            grho2 += gr * gr;
            glt2 += gt * gt;
        }
        // kappa grad log rho = kappa_coeff grad rho
        const double kglr = prm.kappa_coeff * std::sqrt(grho2);
        const double speed = std::sqrt(w.ux[c] * w.ux[c] + w.uy[c] * w.uy[c]);
        double G[2][2] = {{w.G[c * 4 + 0], w.G[c * 4 + 1]},
                          {w.G[c * 4 + 2], w.G[c * 4 + 3]}};
        const double sd = detail::stress_dissipation(G, mu_c, 0.0, grid.dim);
        // |S|_F from the stress tensor entries (3x3 embedding)
        double div = G[0][0] + (grid.dim == 2 ? G[1][1] : 0.0);
        double G3[3][3] = {};
        for (int i = 0; i < grid.dim; ++i)
            for (int j = 0; j < grid.dim; ++j) G3[i][j] = G[i][j];
        double S2 = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double sym = 0.5 * (G3[i][j] + G3[j][i]);
                const double Sij = mu_c * (2.0 * sym - (i == j ? 2.0 / 3.0 * div : 0.0));
                S2 += Sij * Sij;
            }
        e1 += kglr;
        e2 += speed * kglr;
        e3 += std::sqrt(S2);
        e4 += kappa * std::sqrt(glt2);
        budget += sd / std::max(w.theta[c], kVacuumFloor) + kappa * glt2 +
                  kappa / gas.c_v * grho2 / (f.rho[c] * f.rho[c]);
    }
    const double scale = prm.epsilon * grid.cell_volume();
    out.mass_grad = scale * e1;
    out.convective = scale * e2;
    out.stress = scale * e3;
    out.heat_grad = scale * e4;
    out.production = scale * budget;
    return out;
}

BrennerRunResult run_brenner(const ConsField& initial, const Grid& grid,
                             const BrennerParams& prm, const GasParams& gas,
                             const RunSpec& spec, const std::vector<ChiSpec>& battery) {
    prm.validate();
    if (initial.size() != grid.cells())
        throw DomainError("run_brenner: field size != grid cells");

    // classical-solution gate: strictly positive and discretely smooth data
    BrWork w0;
    compute_derived(initial, gas, w0, Exec::Serial);
    for (int i = 0; i < initial.size(); ++i) {
        if (initial.rho[i] <= kVacuumFloor || w0.theta[i] <= kVacuumFloor)
            throw DomainError("run_brenner: initial data touch vacuum");
    }
    for (int a = 0; a < grid.dim; ++a) {
        const double inv_dx2 = 1.0 / (grid.dx[a] * grid.dx[a]);
        for (int c = 0; c < grid.cells(); ++c) {
            const auto p = detail::neighbor(grid, c, a, +1);
            const auto m = detail::neighbor(grid, c, a, -1);
            const double d2r =
                std::abs(initial.rho[p.idx] - 2.0 * initial.rho[c] + initial.rho[m.idx]) *
                inv_dx2;
            const double d2t =
                std::abs(w0.theta[p.idx] - 2.0 * w0.theta[c] + w0.theta[m.idx]) * inv_dx2;
            if (d2r > prm.smoothness_bound || d2t > prm.smoothness_bound) {
                std::ostringstream os;
                os << "run_brenner: initial data not smooth enough at cell " << c
                   << " (second difference " << std::max(d2r, d2t) << " > bound "
                   << prm.smoothness_bound << ")";
                throw DomainError(os.str());
            }
        }
    }

    BrennerRunResult res;
    res.traj.grid = grid;
    res.traj.model = ModelTag::Brenner;
    res.traj.epsilon = prm.epsilon;
    for (const ChiSpec& chi : battery) res.ledger.chi_names.push_back(chi.name);
    res.ledger.chi_series.resize(battery.size());

    ConsField f = initial;
    BrWork w;

    auto record = [&](double t) {
        compute_derived(f, gas, w, Exec::Serial);
        double e_tot = 0.0, s_min = 1e300;
        for (int i = 0; i < grid.cells(); ++i) {
            e_tot += f.E[i];
            if (f.rho[i] > kVacuumFloor && w.theta[i] > kVacuumFloor)
                s_min = std::min(s_min, gas.c_v * std::log(w.theta[i]) - std::log(f.rho[i]));
        }
        res.traj.times.push_back(t);
        res.traj.states.push_back(f);
        res.ledger.times.push_back(t);
        res.ledger.energy_tot.push_back(e_tot * grid.cell_volume());
        res.ledger.min_entropy.push_back(s_min);
        for (std::size_t b = 0; b < battery.size(); ++b) {
            double s_int = 0.0;
            for (int i = 0; i < grid.cells(); ++i) {
                const double s = gas.c_v * std::log(w.theta[i]) - std::log(f.rho[i]);
                s_int += f.rho[i] * battery[b].eval(s);
            }
            res.ledger.chi_series[b].push_back(s_int * grid.cell_volume());
        }
    };

    // accumulate space-time L1 magnitudes of the dissipative terms
    auto accumulate_est = [&](double dt) {
        if (prm.epsilon == 0.0) return;
        const DissipativeMagnitudes m = dissipative_term_magnitudes(f, grid, prm, gas);
        res.ledger.est_mass_grad += dt * m.mass_grad;
        res.ledger.est_convective += dt * m.convective;
        res.ledger.est_stress += dt * m.stress;
        res.ledger.est_heat_grad += dt * m.heat_grad;
        res.ledger.production_budget += dt * m.production;
    };

    record(0.0);
    double t = 0.0;
    const int nsamples = static_cast<int>(std::round(spec.t_end / spec.sample_dt));
    for (int sample = 1; sample <= nsamples; ++sample) {
        const double target = sample * spec.sample_dt;
        while (t < target - 1e-13) {
            const double before = t;
            StepStats st = step_brenner(f, grid, prm, gas, spec.cfl, spec.exec, target - t);
            t = before + st.dt;
            accumulate_est(st.dt);
        }
        t = target;
        record(target);
    }
    return res;
}

} // namespace mvgas
