#include "mvgas/grid.hpp"

#include <sstream>

namespace mvgas {

Grid build_grid(int dim, int n, double length, Bc bc) {
    if (dim < 1 || dim > 2) {
        std::ostringstream os;
        os << "build_grid: unsupported dimension " << dim << " (only 1 or 2)";
        throw DomainError(os.str());
    }
    if (n < 4) throw DomainError("build_grid: need n >= 4 cells per axis");
    if (!(length > 0.0)) throw DomainError("build_grid: length must be > 0");
    Grid g;
    g.dim = dim;
    g.bc = bc;
    for (int a = 0; a < dim; ++a) {
        g.n[a] = n;
        g.length[a] = length;
        g.dx[a] = length / n;
    }
    if (dim == 1) {
        g.n[1] = 1;
        g.length[1] = 1.0;
        g.dx[1] = 1.0;
    }
    return g;
}

std::string model_name(ModelTag tag) {
    switch (tag) {
        case ModelTag::Euler: return "euler";
        case ModelTag::NsEntropy: return "ns-entropy";
        case ModelTag::Brenner: return "brenner";
    }
    return "?";
}

void FieldTrajectory::check() const {
    if (times.size() != states.size())
        throw InvariantViolationError("FieldTrajectory: times/states size mismatch");
    if (!times.empty() && times.front() != 0.0)
        throw InvariantViolationError("FieldTrajectory: times must start at 0");
    for (std::size_t k = 0; k + 1 < times.size(); ++k)
        if (!(times[k] < times[k + 1]))
            throw InvariantViolationError("FieldTrajectory: times not strictly increasing");
    for (const ConsField& f : states) {
        if (f.size() != grid.cells())
            throw InvariantViolationError("FieldTrajectory: field size != grid cells");
        for (int i = 0; i < f.size(); ++i)
            if (!(f.rho[i] >= 0.0) || !(f.E[i] >= 0.0))
                throw InvariantViolationError("FieldTrajectory: state outside Q");
    }
}

} // namespace mvgas
