#include <cmath>

#include "doctest.h"
#include "mvgas/test_functions.hpp"

using namespace mvgas;

TEST_CASE("build_grid basics") {
    auto g = build_grid(1, 8, 1.0, Bc::Periodic);
    CHECK(g.dx[0] == 0.125);
    CHECK(g.faces(0) == 8);

    auto gw = build_grid(1, 4, 2.0, Bc::SlipWall);
    CHECK(gw.faces(0) == 5);  // 5 faces, first and last are walls
    CHECK(gw.face(0, 0) == 0.0);
    CHECK(gw.face(0, 4) == 2.0);

    CHECK_THROWS_AS(build_grid(3, 8, 1.0, Bc::Periodic), DomainError);
    CHECK_THROWS_AS(build_grid(1, 2, 1.0, Bc::Periodic), DomainError);
}

TEST_CASE("quadrature integrates constants exactly and linears to 1e-14") {
    auto g = build_grid(1, 64, 1.0, Bc::Periodic);
    std::vector<double> ones(g.cells(), 3.5);
    CHECK(cell_integral(g, ones) == doctest::Approx(3.5).epsilon(1e-15));

    std::vector<double> lin(g.cells());
    for (int i = 0; i < g.cells(); ++i) lin[i] = 2.0 * g.center(0, i) - 0.7;
    CHECK(std::abs(cell_integral(g, lin) - (1.0 - 0.7)) <= 1e-14);
}

TEST_CASE("test function basis structure") {
    auto g = build_grid(1, 32, 1.0, Bc::Periodic);
    auto basis = test_function_basis(g, 6, 4, 0.2);
    CHECK(!basis.empty());

    int n_const = 0, n_vec = 0, n_nonneg = 0;
    for (const auto& tf : basis) {
        if (tf.is_vector) ++n_vec;
        if (tf.nonnegative) ++n_nonneg;
        if (tf.name.rfind("const", 0) == 0) {
            ++n_const;
            // constant space mode: gradient identically zero at every point
            for (int c = 0; c < g.cells(); c += 5)
                CHECK(face_diff_gradient(g, tf.space, c, 0) == 0.0);
        }
        CHECK(tf.window.value(0.2) == 0.0);  // vanishes at the horizon
        CHECK(tf.window.value(0.0) == 1.0);
    }
    CHECK(n_const == 4);  // one per time window
    CHECK(n_vec > 0);
    CHECK(n_nonneg >= 4);

    // first sine mode is periodic: same value at 0 and L
    for (const auto& tf : basis) {
        if (tf.name.rfind("sin1x", 0) == 0) {
            CHECK(tf.space({0.0, 0.0}) ==
                  doctest::Approx(tf.space({1.0, 0.0})).epsilon(1e-12));
            break;
        }
    }
}

TEST_CASE("vector modes vanish at wall faces") {
    auto g = build_grid(1, 16, 1.0, Bc::SlipWall);
    auto basis = test_function_basis(g, 6, 2, 0.1);
    bool saw_vector = false;
    for (const auto& tf : basis) {
        if (!tf.is_vector) continue;
        saw_vector = true;
        CHECK(tf.space({0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(std::abs(tf.space({1.0, 0.0})) <= 1e-15);
    }
    CHECK(saw_vector);
}

TEST_CASE("discrete divergence theorem is exact for face-difference gradients") {
    // periodic: telescoping wrap; walls: phi. n = 0 kills the boundary terms
    for (Bc bc : {Bc::Periodic, Bc::SlipWall}) {
        auto g = build_grid(1, 40, 1.0, bc);
        auto basis = test_function_basis(g, 6, 2, 0.1);
        for (const auto& tf : basis) {
            if (!tf.is_vector) continue;
            double sum = 0.0;
            for (int c = 0; c < g.cells(); ++c)
                sum += face_diff_gradient(g, tf.space, c, 0) * g.cell_volume();
            CHECK(std::abs(sum) <= 1e-12);
        }
    }
}

TEST_CASE("time window has bounded derivative and covers the ladder") {
    auto g = build_grid(1, 8, 1.0, Bc::Periodic);
    auto basis = test_function_basis(g, 1, 4, 0.4);
    for (const auto& tf : basis) {
        double max_d = 0.0;
        for (double t = 0.0; t <= 0.4; t += 1e-3)
            max_d = std::max(max_d, std::abs(tf.window.dvalue(t)));
        CHECK(max_d <= 1.5 / tf.window.ramp + 1e-9);
        CHECK(max_d > 0.0);
    }
}
