#ifndef MVGAS_RIEMANN_HPP
#define MVGAS_RIEMANN_HPP

#include "mvgas/gas.hpp"

namespace mvgas {

/// Star-region pressure and velocity of the 1D Riemann problem
/// (two-shock / two-rarefaction branches, Newton iteration to 1e-12).
struct RiemannStar {
    double p = 0.0;
    double u = 0.0;
    int iterations = 0;
};

RiemannStar riemann_star(const PrimitiveState& left, const PrimitiveState& right,
                         const GasParams& gas);

/// Exact self-similar solution sampled at xi = x / t.
/// Throws DomainError on vacuum states or vacuum formation.
PrimitiveState riemann_exact_1d(const PrimitiveState& left, const PrimitiveState& right,
                                const GasParams& gas, double x_over_t);

} // namespace mvgas

#endif
