#ifndef MVGAS_GRID_HPP
#define MVGAS_GRID_HPP

#include <array>
#include <string>
#include <vector>

#include "mvgas/gas.hpp"

namespace mvgas {

enum class Bc { Periodic, SlipWall };

/// Uniform cell-centered grid, 1D or 2D.
struct Grid {
    int dim = 1;
    std::array<int, 2> n{1, 1};
    std::array<double, 2> length{1.0, 1.0};
    Bc bc = Bc::Periodic;
    std::array<double, 2> dx{1.0, 1.0};

    int cells() const { return n[0] * n[1]; }
    double cell_volume() const { return dim == 1 ? dx[0] : dx[0] * dx[1]; }
    double center(int axis, int idx) const { return (idx + 0.5) * dx[axis]; }
    double face(int axis, int idx) const { return idx * dx[axis]; }
    int index(int i, int j = 0) const { return j * n[0] + i; }
    int ix(int cell) const { return cell % n[0]; }
    int iy(int cell) const { return cell / n[0]; }
    // faces along one grid line of the given axis
    int faces(int axis) const { return bc == Bc::Periodic ? n[axis] : n[axis] + 1; }
    std::array<double, 2> cell_center(int cell) const {
        return {center(0, ix(cell)), dim == 2 ? center(1, iy(cell)) : 0.0};
    }
};

Grid build_grid(int dim, int n, double length, Bc bc);

enum class ModelTag { Euler, NsEntropy, Brenner };

std::string model_name(ModelTag tag);

/// Conservative fields over the cells of a grid (struct of arrays).
struct ConsField {
    std::vector<double> rho, mx, my, E;

    void resize(int cells) {
        rho.assign(cells, 0.0);
        mx.assign(cells, 0.0);
        my.assign(cells, 0.0);
        E.assign(cells, 0.0);
    }
    int size() const { return static_cast<int>(rho.size()); }
    ConservativeState state(int i) const { return {rho[i], {mx[i], my[i], 0.0}, E[i]}; }
    void set_state(int i, const ConservativeState& s) {
        rho[i] = s.rho;
        mx[i] = s.m.x;
        my[i] = s.m.y;
        E[i] = s.E;
    }
};

/// Time-indexed samples of conservative fields plus model metadata.
struct FieldTrajectory {
    Grid grid;
    ModelTag model = ModelTag::Euler;
    double epsilon = 0.0;
    std::vector<double> times;
    std::vector<ConsField> states;
    // optional per-sample extras: transported pressure root Z (ns-entropy)
    std::vector<std::vector<double>> aux_Z;

    void check() const;  // throws on states outside Q or non-increasing times
};

} // namespace mvgas

#endif
