#include "mvgas/experiment.hpp"

#include <chrono>
#include <exception>
#include <filesystem>
#include <sstream>

#include "mvgas/io.hpp"

namespace mvgas {

namespace {

struct MemberRun {
    FieldTrajectory traj;
    NsLedger ns_ledger;
    BrennerLedger br_ledger;
};

MemberRun run_member(const ExperimentConfig& cfg, const Grid& grid, double eps) {
    MemberRun out;
    RunSpec spec;
    spec.t_end = cfg.t_end;
    spec.sample_dt = cfg.sample_dt;
    spec.cfl = cfg.cfl;
    const auto battery = cfg.battery();
    switch (cfg.model) {
        case ModelTag::Euler: {
            out.traj = run_euler(build_initial_conservative(cfg, grid), grid, cfg.gas, spec);
            break;
        }
        case ModelTag::NsEntropy: {
            NSEntropyParams prm = cfg.ns;
            prm.epsilon = eps;
            auto res = run_ns_entropy(build_initial_ns(cfg, grid), grid, prm, cfg.gas,
                                      spec, battery);
            out.traj = std::move(res.traj);
            out.ns_ledger = std::move(res.ledger);
            break;
        }
        case ModelTag::Brenner: {
            BrennerParams prm = cfg.brenner;
            prm.epsilon = eps;
            auto res = run_brenner(build_initial_conservative(cfg, grid), grid, prm,
                                   cfg.gas, spec, battery);
            out.traj = std::move(res.traj);
            out.br_ledger = std::move(res.ledger);
            break;
        }
    }
    return out;
}

std::string eps_tag(double eps) {
    std::string s = format_double(eps);
    for (char& c : s)
        if (c == '.' || c == '+') c = '_';
    return s;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, RunMode mode,
                                const std::string& out_override) {
    namespace fs = std::filesystem;
    const auto t_start = std::chrono::steady_clock::now();

    ExperimentResult result;
    result.output_dir = out_override.empty() ? cfg.output_dir : out_override;
    fs::create_directories(result.output_dir);
    auto path_of = [&](const std::string& name) { return result.output_dir + "/" + name; };
    auto emit = [&](const std::string& name, const std::string& content) {
        write_file(path_of(name), content);
        result.artifacts.push_back(name);
    };

    const Grid grid = build_grid(cfg.dim, cfg.n, cfg.length, cfg.bc);
    std::vector<double> eps_list = cfg.epsilon_list;
    if (mode == RunMode::Single) eps_list.resize(1);
    if (cfg.model == ModelTag::Euler) eps_list.resize(1);

    std::vector<MemberRun> members(eps_list.size());
    std::vector<std::string> member_error(eps_list.size());
    const int workers = cfg.workers > 1 ? cfg.workers : 1;
#pragma omp parallel for num_threads(workers) schedule(dynamic) if (workers > 1)
    for (std::size_t m = 0; m < eps_list.size(); ++m) {
        try {
            members[m] = run_member(cfg, grid, eps_list[m]);
        } catch (const std::exception& e) {
            member_error[m] = e.what();
        }
    }

    std::string failure;
    for (std::size_t m = 0; m < eps_list.size(); ++m) {
        if (!member_error[m].empty()) {
            failure = "member eps = " + format_double(eps_list[m]) + ": " + member_error[m];
            break;
        }
        std::ostringstream name;
        if (cfg.model == ModelTag::Euler)
            name << "trajectory.csv";
        else
            name << "trajectory_eps" << eps_tag(eps_list[m]) << ".csv";
        emit(name.str(), trajectory_csv(members[m].traj));
    }

    if (failure.empty()) {
        try {
            std::vector<FieldTrajectory> sweep;
            sweep.reserve(members.size());
            for (auto& m : members) sweep.push_back(m.traj);

            auto U = build_empirical_measure(sweep, cfg.measure);
            emit("measure.json", measure_json(U).dump(1) + "\n");

            auto defect = energy_defect(sweep, U, cfg.gas);
            emit("defect.json", defect_json(defect).dump(1) + "\n");

            auto basis = test_function_basis(grid, cfg.K_space, cfg.K_time, cfg.t_end);
            auto report = verify_rdmv(U, basis, cfg.battery(), cfg.gas, cfg.verify, &defect);
            emit("report.json", report_json(report).dump(1) + "\n");
            result.verify_pass = report.all_pass;

            if (cfg.model == ModelTag::Brenner) {
                int positive = 0;
                for (double e : eps_list)
                    if (e > 0.0) ++positive;
                if (positive >= 3) {
                    std::array<std::vector<double>, 4> mags;
                    for (const auto& m : members) {
                        mags[0].push_back(m.br_ledger.est_mass_grad);
                        mags[1].push_back(m.br_ledger.est_convective);
                        mags[2].push_back(m.br_ledger.est_stress);
                        mags[3].push_back(m.br_ledger.est_heat_grad);
                    }
                    auto scaling = dissipation_scaling_report(eps_list, mags);
                    emit("scaling.json", scaling_json(scaling).dump(1) + "\n");
                }
            }

            if (cfg.strong.enabled || mode == RunMode::WeakStrong) {
                auto strong = traveling_contact(cfg.strong.amplitude, cfg.strong.speed,
                                                cfg.strong.pressure, grid);
                auto ws = weak_strong_monitor(sweep, strong, cfg.gas);
                for (const auto& s : ws.members) {
                    std::ostringstream name;
                    name << "weak_strong_eps" << eps_tag(s.epsilon) << ".csv";
                    emit(name.str(), weak_strong_csv(s));
                }
                nlohmann::json wsj = weak_strong_json(ws);
                // diagnostic: the relative energy inequality ledger per member
                const ChiSpec chi = ledger_chi_for(strong, grid, cfg.gas, cfg.t_end);
                auto& ledgers = wsj["inequality_ledger"] = nlohmann::json::array();
                for (const auto& tr : sweep) {
                    const RelEnergyLedger led =
                        relative_energy_inequality_ledger(tr, strong, cfg.gas, chi);
                    ledgers.push_back({{"epsilon", tr.epsilon},
                                       {"tau", led.tau},
                                       {"lhs_bracket", led.lhs_bracket},
                                       {"lhs_energy_gap", led.lhs_energy_gap},
                                       {"rhs_entropy", led.rhs_entropy},
                                       {"rhs_velocity", led.rhs_velocity},
                                       {"rhs_pressure", led.rhs_pressure},
                                       {"rhs_mass", led.rhs_mass},
                                       {"rhs_pressure_ref", led.rhs_pressure_ref},
                                       {"rhs_concentration", led.rhs_concentration},
                                       {"lhs", led.lhs()},
                                       {"rhs", led.rhs()}});
                }
                emit("weak_strong.json", wsj.dump(1) + "\n");
            }
        } catch (const std::exception& e) {
            failure = e.what();
        }
    }

    const auto t_done = std::chrono::steady_clock::now();
    const double wall_s =
        std::chrono::duration_cast<std::chrono::duration<double>>(t_done - t_start).count();

    nlohmann::json manifest;
    manifest["schema"] = "mvgas.manifest/1";
    manifest["version"] = kVersion;
    manifest["status"] = failure.empty() ? "ok" : "failed";
    if (!failure.empty()) manifest["error"] = failure;
    manifest["seed"] = cfg.seed;
    manifest["config"] = config_echo(cfg);
    manifest["artifacts"] = result.artifacts;
    manifest["wall_time_s"] = wall_s;
    write_file(path_of("manifest.json"), manifest.dump(1) + "\n");
    result.artifacts.push_back("manifest.json");

    result.solver_failed = !failure.empty();
    result.error = failure;
    return result;
}

} // namespace mvgas
