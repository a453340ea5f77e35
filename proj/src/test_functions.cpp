#include "mvgas/test_functions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace mvgas {

namespace {
constexpr double kPi = std::numbers::pi;
}

double TimeWindow::value(double t) const {
    if (t <= tau - ramp) return 1.0;
    if (t >= tau) return 0.0;
    const double r = (t - (tau - ramp)) / ramp;  // in (0,1)
    return 1.0 - (3.0 * r * r - 2.0 * r * r * r);
}

double TimeWindow::dvalue(double t) const {
    if (t <= tau - ramp || t >= tau) return 0.0;
    const double r = (t - (tau - ramp)) / ramp;
    return -(6.0 * r - 6.0 * r * r) / ramp;
}

std::vector<TestFunction> test_function_basis(const Grid& grid, int K_space,
                                              int K_time, double horizon) {
    if (K_space < 1 || K_time < 1)
        throw DomainError("test_function_basis: K_space, K_time must be >= 1");

    std::vector<TimeWindow> windows;
    for (int j = 1; j <= K_time; ++j) {
        TimeWindow w;
        w.tau = horizon * j / K_time;
        w.ramp = 0.5 * horizon / K_time;
        windows.push_back(w);
    }

    struct SpaceMode {
        std::string name;
        bool nonneg;
        std::function<double(std::array<double, 2>)> f;
    };
    std::vector<SpaceMode> scalar_modes;
    scalar_modes.push_back({"const", true, [](std::array<double, 2>) { return 1.0; }});

    const bool periodic = grid.bc == Bc::Periodic;
    for (int k = 1; static_cast<int>(scalar_modes.size()) < K_space; ++k) {
        for (int a = 0; a < grid.dim && static_cast<int>(scalar_modes.size()) < K_space; ++a) {
            const double L = grid.length[a];
            if (periodic) {
                const double om = 2.0 * kPi * k / L;
                std::ostringstream nm;
                nm << "raised-cos" << k << (a == 0 ? "x" : "y");
                scalar_modes.push_back({nm.str(), true, [om, a](std::array<double, 2> x) {
                                            return 0.5 * (1.0 + std::cos(om * x[a]));
                                        }});
                if (static_cast<int>(scalar_modes.size()) < K_space) {
                    std::ostringstream nm2;
                    nm2 << "sin" << k << (a == 0 ? "x" : "y");
                    scalar_modes.push_back({nm2.str(), false, [om, a](std::array<double, 2> x) {
                                                return std::sin(om * x[a]);
                                            }});
                }
            } else {
                const double om = kPi * k / L;
                std::ostringstream nm;
                nm << "raised-cos" << k << (a == 0 ? "x" : "y");
                scalar_modes.push_back({nm.str(), true, [om, a](std::array<double, 2> x) {
                                            return 0.5 * (1.0 + std::cos(om * x[a]));
                                        }});
                if (static_cast<int>(scalar_modes.size()) < K_space) {
                    std::ostringstream nm2;
                    nm2 << "cos" << k << (a == 0 ? "x" : "y");
                    scalar_modes.push_back({nm2.str(), false, [om, a](std::array<double, 2> x) {
                                                return std::cos(om * x[a]);
                                            }});
                }
            }
        }
    }

    // Vector modes: profile vanishes at walls along the component axis, so
    // phi . n = 0 holds exactly at wall faces.
    std::vector<SpaceMode> vector_modes[2];
    const int K_vec = std::max(1, K_space / 2);
    for (int a = 0; a < grid.dim; ++a) {
        const double L = grid.length[a];
        for (int k = 1; static_cast<int>(vector_modes[a].size()) < K_vec; ++k) {
            std::ostringstream nm;
            nm << "vec" << (a == 0 ? "x" : "y") << "-mode" << k;
            if (periodic) {
                const double om = 2.0 * kPi * k / L;
                if (k % 2 == 1)
                    vector_modes[a].push_back({nm.str(), false, [om, a](std::array<double, 2> x) {
                                                   return std::sin(om * x[a]);
                                               }});
                else
                    vector_modes[a].push_back({nm.str(), false, [om, a](std::array<double, 2> x) {
                                                   return std::cos(om * x[a]);
                                               }});
            } else {
                const double om = kPi * k / L;
                vector_modes[a].push_back({nm.str(), false, [om, a](std::array<double, 2> x) {
                                               return std::sin(om * x[a]);
                                           }});
            }
        }
    }

    std::vector<TestFunction> basis;
    for (std::size_t wi = 0; wi < windows.size(); ++wi) {
        for (const SpaceMode& m : scalar_modes) {
            TestFunction tf;
            std::ostringstream nm;
            nm << m.name << "*w" << wi + 1;
            tf.name = nm.str();
            tf.nonnegative = m.nonneg;
            tf.space = m.f;
            tf.window = windows[wi];
            basis.push_back(std::move(tf));
        }
        for (int a = 0; a < grid.dim; ++a) {
            for (const SpaceMode& m : vector_modes[a]) {
                TestFunction tf;
                std::ostringstream nm;
                nm << m.name << "*w" << wi + 1;
                tf.name = nm.str();
                tf.is_vector = true;
                tf.vec_axis = a;
                tf.space = m.f;
                tf.window = windows[wi];
                basis.push_back(std::move(tf));
            }
        }
    }
    return basis;
}

double cell_integral(const Grid& grid, const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum * grid.cell_volume();
}

double face_diff_gradient(const Grid& grid,
                          const std::function<double(std::array<double, 2>)>& space,
                          int cell, int axis) {
    const int i = grid.ix(cell);
    const int j = grid.iy(cell);
    std::array<double, 2> lo{grid.center(0, i), grid.dim == 2 ? grid.center(1, j) : 0.0};
    std::array<double, 2> hi = lo;
    lo[axis] = grid.face(axis, axis == 0 ? i : j);
    hi[axis] = grid.face(axis, (axis == 0 ? i : j) + 1);
    return (space(hi) - space(lo)) / grid.dx[axis];
}

} // namespace mvgas
