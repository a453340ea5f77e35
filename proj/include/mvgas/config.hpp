#ifndef MVGAS_CONFIG_HPP
#define MVGAS_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "mvgas/brenner.hpp"
#include "mvgas/grid.hpp"
#include "mvgas/ns_entropy.hpp"
#include "mvgas/verifier.hpp"
#include "mvgas/young_measure.hpp"

namespace mvgas {

enum class IcKind { Sod, Contact, Oscillatory, Table };

struct IcSpec {
    IcKind kind = IcKind::Contact;
    double amplitude = 0.2;
    double velocity = 1.0;
    double pressure = 1.0;
    int wavenumber = 1;          // oscillatory density mode count
    double entropy_base = 0.0;   // uniform entropy shift
    double entropy_amplitude = 0.0;
    std::string table_path;
};

struct StrongSpec {
    bool enabled = false;
    double amplitude = 0.2;
    double speed = 1.0;
    double pressure = 1.0;
};

/// Parsed and validated experiment configuration ([section] key = value text).
struct ExperimentConfig {
    ModelTag model = ModelTag::Euler;
    GasParams gas = GasParams::from_cv(1.5);
    int dim = 1;
    int n = 200;
    double length = 1.0;
    Bc bc = Bc::Periodic;
    IcSpec ic;
    std::vector<double> epsilon_list{0.0};
    double t_end = 0.2;
    double cfl = 0.45;
    double sample_dt = 0.02;
    long seed = 0;
    int workers = 0;  // 0: library default
    // chi battery
    double chi_s0 = 0.0;
    std::vector<double> chi_ks{-2.0, -1.0, 0.0, 1.0, 2.0};
    bool chi_smooth = true;
    NSEntropyParams ns;
    BrennerParams brenner;
    CoarseSpec measure;
    VerifyTolerances verify;
    int K_space = 6;
    int K_time = 4;
    StrongSpec strong;
    std::string output_dir = "out";

    std::vector<ChiSpec> battery() const { return chi_battery(chi_s0, chi_ks, chi_smooth); }
};

/// Parses the key = value section grammar; unknown keys and inadmissible data
/// produce ConfigError with the key path.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config_file(const std::string& path);

/// Initial fields for the configured model (conservative, or (rho, Z, m)).
ConsField build_initial_conservative(const ExperimentConfig& cfg, const Grid& grid);
NsField build_initial_ns(const ExperimentConfig& cfg, const Grid& grid);

/// Config echo used by the run manifest (normalized key = value text).
std::string config_echo(const ExperimentConfig& cfg);

} // namespace mvgas

#endif
