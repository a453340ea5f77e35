#include "mvgas/riemann.hpp"

#include <cmath>
#include <sstream>

namespace mvgas {

namespace {

struct Side {
    double rho, u, p, c;
};

// Pressure function f_K(p) and its derivative (Toro's notation).
void pressure_fn(double p, const Side& s, double gamma, double& f, double& df) {
    if (p > s.p) {  // shock branch
        const double A = 2.0 / ((gamma + 1.0) * s.rho);
        const double B = (gamma - 1.0) / (gamma + 1.0) * s.p;
        const double q = std::sqrt(A / (p + B));
        f = (p - s.p) * q;
        df = q * (1.0 - 0.5 * (p - s.p) / (p + B));
    } else {  // rarefaction branch
        const double ex = (gamma - 1.0) / (2.0 * gamma);
        f = 2.0 * s.c / (gamma - 1.0) * (std::pow(p / s.p, ex) - 1.0);
        df = std::pow(p / s.p, -(gamma + 1.0) / (2.0 * gamma)) / (s.rho * s.c);
    }
}

Side make_side(const PrimitiveState& st, const GasParams& gas, const char* which) {
    if (!(st.rho > kVacuumFloor) || !(st.theta > 0.0)) {
        std::ostringstream os;
        os << "riemann_exact_1d: " << which << " state at vacuum";
        throw DomainError(os.str());
    }
    Side s;
    s.rho = st.rho;
    s.u = st.u.x;
    s.p = st.rho * st.theta;
    s.c = std::sqrt(gas.gamma * st.theta);
    return s;
}

} // namespace

RiemannStar riemann_star(const PrimitiveState& left, const PrimitiveState& right,
                         const GasParams& gas) {
    const double gamma = gas.gamma;
    const Side L = make_side(left, gas, "left");
    const Side R = make_side(right, gas, "right");
    const double du = R.u - L.u;

    // pressure positivity: vacuum forms when the rarefactions cannot meet
    if (2.0 * L.c / (gamma - 1.0) + 2.0 * R.c / (gamma - 1.0) <= du)
        throw DomainError("riemann_exact_1d: vacuum formation (no positive star pressure)");

    // two-rarefaction initial guess
    const double ex = (gamma - 1.0) / (2.0 * gamma);
    double p = std::pow((L.c + R.c - 0.5 * (gamma - 1.0) * du) /
                            (L.c / std::pow(L.p, ex) + R.c / std::pow(R.p, ex)),
                        1.0 / ex);
    p = std::max(p, 1e-14);

    RiemannStar star;
    double fL, dfL, fR, dfR;
    for (int it = 0; it < 200; ++it) {
        pressure_fn(p, L, gamma, fL, dfL);
        pressure_fn(p, R, gamma, fR, dfR);
        const double g = fL + fR + du;
        const double dp = -g / (dfL + dfR);
        double pn = p + dp;
        if (pn <= 0.0) pn = 0.5 * p;
        star.iterations = it + 1;
        const double change = 2.0 * std::abs(pn - p) / (pn + p);
        p = pn;
        if (change < 1e-12) break;
    }
    pressure_fn(p, L, gamma, fL, dfL);
    pressure_fn(p, R, gamma, fR, dfR);
    star.p = p;
    star.u = 0.5 * (L.u + R.u) + 0.5 * (fR - fL);
    return star;
}

PrimitiveState riemann_exact_1d(const PrimitiveState& left, const PrimitiveState& right,
                                const GasParams& gas, double x_over_t) {
    const double gamma = gas.gamma;
    const Side L = make_side(left, gas, "left");
    const Side R = make_side(right, gas, "right");
    const RiemannStar star = riemann_star(left, right, gas);
    const double ps = star.p, us = star.u;
    const double xi = x_over_t;

    double rho, u, p;
    if (xi <= us) {  // left of the contact
        if (ps > L.p) {  // left shock
            const double beta = (gamma - 1.0) / (gamma + 1.0);
            const double SL =
                L.u - L.c * std::sqrt((gamma + 1.0) / (2.0 * gamma) * ps / L.p +
                                      (gamma - 1.0) / (2.0 * gamma));
            if (xi <= SL) {
                rho = L.rho; u = L.u; p = L.p;
            } else {
                rho = L.rho * ((ps / L.p + beta) / (beta * ps / L.p + 1.0));
                u = us; p = ps;
            }
        } else {  // left rarefaction
            const double cs = L.c * std::pow(ps / L.p, (gamma - 1.0) / (2.0 * gamma));
            const double head = L.u - L.c;
            const double tail = us - cs;
            if (xi <= head) {
                rho = L.rho; u = L.u; p = L.p;
            } else if (xi >= tail) {
                rho = L.rho * std::pow(ps / L.p, 1.0 / gamma);
                u = us; p = ps;
            } else {  // inside the fan
                const double c = 2.0 / (gamma + 1.0) *
                                 (L.c + 0.5 * (gamma - 1.0) * (L.u - xi));
                u = 2.0 / (gamma + 1.0) * (L.c + 0.5 * (gamma - 1.0) * L.u + xi);
                rho = L.rho * std::pow(c / L.c, 2.0 / (gamma - 1.0));
                p = L.p * std::pow(c / L.c, 2.0 * gamma / (gamma - 1.0));
            }
        }
    } else {  // right of the contact
        if (ps > R.p) {  // right shock
            const double beta = (gamma - 1.0) / (gamma + 1.0);
            const double SR =
                R.u + R.c * std::sqrt((gamma + 1.0) / (2.0 * gamma) * ps / R.p +
                                      (gamma - 1.0) / (2.0 * gamma));
            if (xi >= SR) {
                rho = R.rho; u = R.u; p = R.p;
            } else {
                rho = R.rho * ((ps / R.p + beta) / (beta * ps / R.p + 1.0));
                u = us; p = ps;
            }
        } else {  // right rarefaction
            const double cs = R.c * std::pow(ps / R.p, (gamma - 1.0) / (2.0 * gamma));
            const double head = R.u + R.c;
            const double tail = us + cs;
            if (xi >= head) {
                rho = R.rho; u = R.u; p = R.p;
            } else if (xi <= tail) {
                rho = R.rho * std::pow(ps / R.p, 1.0 / gamma);
                u = us; p = ps;
            } else {
                const double c = 2.0 / (gamma + 1.0) *
                                 (R.c - 0.5 * (gamma - 1.0) * (R.u - xi));
                u = 2.0 / (gamma + 1.0) * (-R.c + 0.5 * (gamma - 1.0) * R.u + xi);
                rho = R.rho * std::pow(c / R.c, 2.0 / (gamma - 1.0));
                p = R.p * std::pow(c / R.c, 2.0 * gamma / (gamma - 1.0));
            }
        }
    }
    return make_primitive(rho, Vec3{u, 0.0, 0.0}, p / rho, gas);
}

} // namespace mvgas
