#ifndef MVGAS_SRC_STENCIL_HPP
#define MVGAS_SRC_STENCIL_HPP

#include "mvgas/grid.hpp"

// Internal neighbor/gradient helpers shared by the viscous solvers.
namespace mvgas::detail {

struct Neigh {
    int idx;
    bool wall;  // crossed a wall: mirror the cell itself (flip odd quantities)
};

inline Neigh neighbor(const Grid& g, int cell, int axis, int dir) {
    int i = g.ix(cell), j = g.iy(cell);
    int& k = axis == 0 ? i : j;
    const int n = g.n[axis];
    k += dir;
    if (g.bc == Bc::Periodic) {
        k = (k + n) % n;
        return {g.index(i, j), false};
    }
    if (k < 0 || k >= n) {
        k -= dir;  // ghost = mirrored interior cell
        return {g.index(i, j), true};
    }
    return {g.index(i, j), false};
}

// Centered gradient of an even scalar field (mirror ghosts copy the value).
inline double grad_even(const Grid& g, const std::vector<double>& q, int cell, int axis) {
    const Neigh p = neighbor(g, cell, axis, +1);
    const Neigh m = neighbor(g, cell, axis, -1);
    return (q[p.idx] - q[m.idx]) / (2.0 * g.dx[axis]);
}

// Centered gradient of velocity component i along axis a; the normal component
// (i == a) is odd across walls.
inline double grad_velocity(const Grid& g, const std::vector<double>& ui, int comp,
                            int cell, int axis) {
    const Neigh p = neighbor(g, cell, axis, +1);
    const Neigh m = neighbor(g, cell, axis, -1);
    const double vp = (p.wall && comp == axis) ? -ui[p.idx] : ui[p.idx];
    const double vm = (m.wall && comp == axis) ? -ui[m.idx] : ui[m.idx];
    return (vp - vm) / (2.0 * g.dx[axis]);
}

// S(G) : G for S = mu (G + G^T - 2/3 tr I) + eta tr I, evaluated as the
// nonnegative quadratic form 2 mu |dev sym G|^2 + eta (tr G)^2 with the
// 3x3 deviatoric convention (desk grids embed in R^3).
inline double stress_dissipation(const double G[2][2], double mu, double eta, int dim) {
    double div = G[0][0];
    if (dim == 2) div += G[1][1];
    double sym[3][3] = {};
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) sym[i][j] = 0.5 * (G[i][j] + G[j][i]);
    double dev2 = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double d = sym[i][j] - (i == j ? div / 3.0 : 0.0);
            dev2 += d * d;
        }
    return 2.0 * mu * dev2 + eta * div * div;
}

} // namespace mvgas::detail

#endif
