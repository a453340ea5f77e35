#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "mvgas/experiment.hpp"
#include "mvgas/io.hpp"

using namespace mvgas;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kMinimalEuler = R"(
[experiment]
model = euler
t_end = 0.1
sample_dt = 0.02

[ic]
kind = sod
)";

} // namespace

TEST_CASE("minimal config applies defaults") {
    auto cfg = parse_config(kMinimalEuler);
    CHECK(cfg.model == ModelTag::Euler);
    CHECK(cfg.cfl == 0.45);
    CHECK(cfg.n == 200);
    CHECK(cfg.gas.c_v == 1.5);
    CHECK(cfg.chi_ks.size() == 5);
}

TEST_CASE("unknown keys are rejected with the key path") {
    try {
        parse_config("[experiment]\nmodle = euler\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("experiment.modle") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("[nosuch]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[experiment]\nt_end = zero\n"), ConfigError);
}

TEST_CASE("ns admissibility: Z0 touching zero is rejected") {
    // table data with a zero-pressure row: Z0 = (rho theta)^(1/gamma) = 0 there
    const fs::path dir = fs::temp_directory_path() / "mvgas_z0_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path table = dir / "z0.csv";
    {
        std::ofstream out(table);
        out << "x,rho,u,p\n";
        for (int i = 0; i < 64; ++i) {
            const double x = (i + 0.5) / 64.0;
            out << x << ",1.0,0.0," << (i == 32 ? 0.0 : 1.0) << "\n";
        }
    }
    std::ostringstream text;
    text << "[experiment]\nmodel = ns-entropy\nt_end = 0.1\nsample_dt = 0.05\n"
         << "[grid]\nn = 64\n[ic]\nkind = table\npath = " << table.string() << "\n";
    CHECK_THROWS_AS(parse_config(text.str()), ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("brenner config with nonzero eta is rejected") {
    const char* text = R"(
[experiment]
model = brenner
t_end = 0.1
sample_dt = 0.05

[brenner]
eta = 0.5
)";
    CHECK_THROWS_AS(parse_config(text), ConfigError);
}

TEST_CASE("epsilon list must be strictly decreasing") {
    const char* text = R"(
[experiment]
model = brenner
t_end = 0.1
sample_dt = 0.05
epsilon_list = 1e-3, 1e-2
)";
    CHECK_THROWS_AS(parse_config(text), ConfigError);
}

TEST_CASE("sweep writes the contracted artifact set") {
    const char* text = R"(
[experiment]
model = brenner
t_end = 0.04
sample_dt = 0.02
epsilon_list = 1e-2, 3e-3, 1e-3

[grid]
n = 64

[ic]
kind = contact
)";
    auto cfg = parse_config(text);
    const fs::path dir = fs::temp_directory_path() / "mvgas_artifacts_test";
    fs::remove_all(dir);
    auto res = run_experiment(cfg, RunMode::Sweep, dir.string());
    CHECK_FALSE(res.solver_failed);

    int ntraj = 0;
    for (const std::string& a : res.artifacts)
        if (a.rfind("trajectory", 0) == 0) ++ntraj;
    CHECK(ntraj == 3);  // 3 eps values -> 3 trajectory files
    CHECK(fs::exists(dir / "measure.json"));
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "defect.json"));
    CHECK(fs::exists(dir / "scaling.json"));
    CHECK(fs::exists(dir / "manifest.json"));

    auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["status"] == "ok");
    CHECK(manifest["schema"] == "mvgas.manifest/1");
    CHECK(!manifest["config"].get<std::string>().empty());
    fs::remove_all(dir);
}

TEST_CASE("identical config and seed reproduce byte-identical artifacts") {
    const char* text = R"(
[experiment]
model = ns-entropy
t_end = 0.04
sample_dt = 0.02
epsilon_list = 1e-2, 1e-3
seed = 7

[grid]
n = 64

[ic]
kind = contact
entropy_amplitude = 0.2
)";
    auto cfg = parse_config(text);
    const fs::path d1 = fs::temp_directory_path() / "mvgas_det1";
    const fs::path d2 = fs::temp_directory_path() / "mvgas_det2";
    fs::remove_all(d1);
    fs::remove_all(d2);
    auto r1 = run_experiment(cfg, RunMode::Sweep, d1.string());
    auto r2 = run_experiment(cfg, RunMode::Sweep, d2.string());
    REQUIRE_FALSE(r1.solver_failed);
    for (const std::string& a : r1.artifacts) {
        if (a == "manifest.json") continue;  // carries wall times
        CHECK(slurp(d1 / a) == slurp(d2 / a));
    }
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("solver blow-up leaves a failure manifest") {
    // table data engineered to blow up: huge opposing velocities
    const fs::path dir = fs::temp_directory_path() / "mvgas_fail_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path table = dir / "bad.csv";
    {
        std::ofstream out(table);
        out << "x,rho,u,p\n";
        for (int i = 0; i < 64; ++i) {
            const double x = (i + 0.5) / 64.0;
            out << x << "," << 1e-6 << "," << (x < 0.5 ? 1e8 : -1e8) << "," << 1e-9 << "\n";
        }
    }
    std::ostringstream text;
    text << "[experiment]\nmodel = euler\nt_end = 0.1\nsample_dt = 0.05\n"
         << "[grid]\nn = 64\n[ic]\nkind = table\npath = " << table.string() << "\n";
    auto cfg = parse_config(text.str());
    auto res = run_experiment(cfg, RunMode::Single, (dir / "out").string());
    CHECK(res.solver_failed);
    auto manifest = nlohmann::json::parse(slurp(dir / "out" / "manifest.json"));
    CHECK(manifest["status"] == "failed");
    CHECK(!manifest["error"].get<std::string>().empty());
    fs::remove_all(dir);
}

#ifdef MVGAS_CLI_PATH
TEST_CASE("cli verify exit status reflects the report") {
    const fs::path dir = fs::temp_directory_path() / "mvgas_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "ok.ini");
        out << "[experiment]\nmodel = euler\nt_end = 0.1\nsample_dt = 0.02\n"
            << "[grid]\nn = 64\n[ic]\nkind = contact\n";
    }
    {
        std::ofstream out(dir / "bad.ini");
        // sub-scheme tolerance forces a failing report
        out << "[experiment]\nmodel = euler\nt_end = 0.1\nsample_dt = 0.02\n"
            << "[grid]\nn = 64\n[ic]\nkind = sod\n"
            << "[verify]\nweak_C = 1e-12\nweak_safety = 1\n";
    }
    std::string cli = MVGAS_CLI_PATH;
    const int ok = std::system(
        (cli + " verify --config " + (dir / "ok.ini").string() + " --out " +
         (dir / "o1").string() + " > /dev/null 2>&1")
            .c_str());
    CHECK(WEXITSTATUS(ok) == 0);
    const int bad = std::system(
        (cli + " verify --config " + (dir / "bad.ini").string() + " --out " +
         (dir / "o2").string() + " > /dev/null 2>&1")
            .c_str());
    CHECK(WEXITSTATUS(bad) != 0);
    fs::remove_all(dir);
}
#endif
