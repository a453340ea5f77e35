// Command-line driver: run / sweep / verify / weak-strong on a config file.
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "mvgas/experiment.hpp"

using namespace mvgas;

namespace {

int run_mode(const std::string& config_path, const std::string& out, RunMode mode) {
    ExperimentConfig cfg = load_config_file(config_path);
    ExperimentResult res = run_experiment(cfg, mode, out);
    if (res.solver_failed) {
        std::fprintf(stderr, "run failed: %s\n", res.error.c_str());
        std::fprintf(stderr, "partial artifacts + failure manifest in %s\n",
                     res.output_dir.c_str());
        return 2;
    }
    for (const std::string& a : res.artifacts)
        std::printf("wrote %s/%s\n", res.output_dir.c_str(), a.c_str());
    if (mode == RunMode::Verify) {
        std::printf("verification: %s\n", res.verify_pass ? "PASS" : "FAIL");
        return res.verify_pass ? 0 : 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mvgas: measure-valued solutions laboratory for compressible flows"};
    app.require_subcommand(1);

    std::string config_path, out_dir;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "experiment config file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides [output] dir)");
    };

    auto* cmd_run = app.add_subcommand("run", "single run (first epsilon)");
    auto* cmd_sweep = app.add_subcommand("sweep", "run the full epsilon sweep");
    auto* cmd_verify =
        app.add_subcommand("verify", "run and verify; exit nonzero iff a clause fails");
    auto* cmd_ws = app.add_subcommand("weak-strong", "sweep plus weak-strong monitor");
    for (auto* c : {cmd_run, cmd_sweep, cmd_verify, cmd_ws}) add_common(c);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) return run_mode(config_path, out_dir, RunMode::Single);
        if (cmd_sweep->parsed()) return run_mode(config_path, out_dir, RunMode::Sweep);
        if (cmd_verify->parsed()) return run_mode(config_path, out_dir, RunMode::Verify);
        if (cmd_ws->parsed()) return run_mode(config_path, out_dir, RunMode::WeakStrong);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
