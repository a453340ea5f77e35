#ifndef MVGAS_EXPERIMENT_HPP
#define MVGAS_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "mvgas/config.hpp"

namespace mvgas {

enum class RunMode { Single, Sweep, Verify, WeakStrong };

struct ExperimentResult {
    bool solver_failed = false;
    std::string error;
    bool verify_pass = true;
    std::vector<std::string> artifacts;  // paths relative to the output dir
    std::string output_dir;
};

/// Runs the configured experiment and writes all artifacts (trajectory CSVs,
/// Young-measure JSON, verification report JSON, optional weak-strong CSVs,
/// and a run manifest).  Identical config + seed reproduce byte-identical
/// numeric artifacts; the manifest additionally carries wall times.
ExperimentResult run_experiment(const ExperimentConfig& cfg, RunMode mode,
                                const std::string& out_override = "");

} // namespace mvgas

#endif
