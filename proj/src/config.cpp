#include "mvgas/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mvgas/io.hpp"

namespace mvgas {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& path, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(path + ": expected a number, got '" + v + "'");
    }
}

long to_long(const std::string& path, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ConfigError(path + ": expected an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& path, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(path + ": expected a boolean, got '" + v + "'");
}

std::vector<double> to_list(const std::string& path, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(path, item));
    }
    if (out.empty()) throw ConfigError(path + ": expected a comma-separated list");
    return out;
}

void validate(const ExperimentConfig& cfg) {
    if (!(cfg.t_end > 0.0)) throw ConfigError("experiment.t_end: must be > 0");
    if (!(cfg.sample_dt > 0.0) || cfg.sample_dt > cfg.t_end + 1e-15)
        throw ConfigError("experiment.sample_dt: need 0 < sample_dt <= t_end");
    if (!(cfg.cfl > 0.0 && cfg.cfl < 1.0))
        throw ConfigError("experiment.cfl: must be in (0,1)");
    if (cfg.epsilon_list.empty()) throw ConfigError("experiment.epsilon_list: empty");
    for (std::size_t i = 0; i + 1 < cfg.epsilon_list.size(); ++i)
        if (!(cfg.epsilon_list[i] > cfg.epsilon_list[i + 1]))
            throw ConfigError("experiment.epsilon_list: must be strictly decreasing");
    try {
        if (cfg.model == ModelTag::NsEntropy) {
            NSEntropyParams p = cfg.ns;
            p.epsilon = cfg.epsilon_list.front();
            p.validate(cfg.gas);
        }
        if (cfg.model == ModelTag::Brenner) cfg.brenner.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }

    // admissibility of the initial data (positivity; entropy window for ns)
    const Grid grid = build_grid(cfg.dim, cfg.n, cfg.length, cfg.bc);
    if (cfg.model == ModelTag::NsEntropy) {
        NsField f = build_initial_ns(cfg, grid);
        for (int i = 0; i < f.size(); ++i) {
            if (!(f.rho[i] > 0.0))
                throw ConfigError("ic: rho must be strictly positive for ns-entropy");
            if (!(f.Z[i] > 0.0))
                throw ConfigError("ic: Z0 = 0 somewhere (entropy window requires "
                                  "0 < c_star rho0 <= Z0)");
        }
    } else {
        ConsField f = build_initial_conservative(cfg, grid);
        for (int i = 0; i < f.size(); ++i)
            if (!(f.rho[i] > 0.0) || !(f.E[i] > 0.0))
                throw ConfigError("ic: fields must be strictly positive");
    }
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_cv = false, have_gamma = false;
    double cv = 1.5, gamma = 0.0;

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const std::string path = section + "." + key;

        if (section == "experiment") {
            if (key == "model") {
                if (val == "euler") cfg.model = ModelTag::Euler;
                else if (val == "ns-entropy") cfg.model = ModelTag::NsEntropy;
                else if (val == "brenner") cfg.model = ModelTag::Brenner;
                else throw ConfigError(path + ": unknown model '" + val + "'");
            } else if (key == "t_end") cfg.t_end = to_double(path, val);
            else if (key == "cfl") cfg.cfl = to_double(path, val);
            else if (key == "sample_dt") cfg.sample_dt = to_double(path, val);
            else if (key == "epsilon_list") cfg.epsilon_list = to_list(path, val);
            else if (key == "seed") cfg.seed = to_long(path, val);
            else if (key == "workers") cfg.workers = static_cast<int>(to_long(path, val));
            else throw ConfigError(path + ": unknown key");
        } else if (section == "gas") {
            if (key == "c_v") { cv = to_double(path, val); have_cv = true; }
            else if (key == "gamma") { gamma = to_double(path, val); have_gamma = true; }
            else throw ConfigError(path + ": unknown key");
        } else if (section == "grid") {
            if (key == "dim") cfg.dim = static_cast<int>(to_long(path, val));
            else if (key == "n") cfg.n = static_cast<int>(to_long(path, val));
            else if (key == "length") cfg.length = to_double(path, val);
            else if (key == "bc") {
                if (val == "periodic") cfg.bc = Bc::Periodic;
                else if (val == "slip-wall") cfg.bc = Bc::SlipWall;
                else throw ConfigError(path + ": unknown bc '" + val + "'");
            } else throw ConfigError(path + ": unknown key");
        } else if (section == "ic") {
            if (key == "kind") {
                if (val == "sod") cfg.ic.kind = IcKind::Sod;
                else if (val == "contact") cfg.ic.kind = IcKind::Contact;
                else if (val == "oscillatory") cfg.ic.kind = IcKind::Oscillatory;
                else if (val == "table") cfg.ic.kind = IcKind::Table;
                else throw ConfigError(path + ": unknown ic kind '" + val + "'");
            } else if (key == "amplitude") cfg.ic.amplitude = to_double(path, val);
            else if (key == "velocity") cfg.ic.velocity = to_double(path, val);
            else if (key == "pressure") cfg.ic.pressure = to_double(path, val);
            else if (key == "wavenumber") cfg.ic.wavenumber = static_cast<int>(to_long(path, val));
            else if (key == "entropy_base") cfg.ic.entropy_base = to_double(path, val);
            else if (key == "entropy_amplitude") cfg.ic.entropy_amplitude = to_double(path, val);
            else if (key == "path") cfg.ic.table_path = val;
            else throw ConfigError(path + ": unknown key");
        } else if (section == "ns") {
            if (key == "beta") cfg.ns.beta = to_double(path, val);
            else if (key == "mu") cfg.ns.mu = to_double(path, val);
            else if (key == "eta") cfg.ns.eta = to_double(path, val);
            else if (key == "c_star") cfg.ns.c_star = to_double(path, val);
            else if (key == "c_upper") cfg.ns.c_upper = to_double(path, val);
            else throw ConfigError(path + ": unknown key");
        } else if (section == "brenner") {
            if (key == "kappa_coeff") cfg.brenner.kappa_coeff = to_double(path, val);
            else if (key == "mu_coeff") cfg.brenner.mu_coeff = to_double(path, val);
            else if (key == "eta") cfg.brenner.eta = to_double(path, val);
            else if (key == "s0") cfg.brenner.s0 = to_double(path, val);
            else if (key == "smoothness_bound") cfg.brenner.smoothness_bound = to_double(path, val);
            else if (key == "mu_law") {
                if (val == "rho") cfg.brenner.mu_law = MuLaw::Rho;
                else if (val == "inv-theta") cfg.brenner.mu_law = MuLaw::InvTheta;
                else if (val == "rho-plus-inv-theta") cfg.brenner.mu_law = MuLaw::RhoPlusInvTheta;
                else throw ConfigError(path + ": unknown mu law '" + val + "'");
            } else throw ConfigError(path + ": unknown key");
        } else if (section == "chi") {
            if (key == "s0") cfg.chi_s0 = to_double(path, val);
            else if (key == "ks") cfg.chi_ks = to_list(path, val);
            else if (key == "smooth") cfg.chi_smooth = to_bool(path, val);
            else throw ConfigError(path + ": unknown key");
        } else if (section == "measure") {
            if (key == "coarse_nt") cfg.measure.nt = static_cast<int>(to_long(path, val));
            else if (key == "coarse_nx") cfg.measure.nx = static_cast<int>(to_long(path, val));
            else if (key == "coarse_ny") cfg.measure.ny = static_cast<int>(to_long(path, val));
            else if (key == "pool") {
                if (val == "reference") cfg.measure.pool = PoolMode::Reference;
                else if (val == "all") cfg.measure.pool = PoolMode::All;
                else throw ConfigError(path + ": unknown pool mode '" + val + "'");
            } else if (key == "reference") cfg.measure.reference = static_cast<int>(to_long(path, val));
            else if (key == "hist_bin_rho") cfg.measure.hist_bin[0] = to_double(path, val);
            else if (key == "hist_bin_m") cfg.measure.hist_bin[1] = to_double(path, val);
            else if (key == "hist_bin_E") cfg.measure.hist_bin[2] = to_double(path, val);
            else throw ConfigError(path + ": unknown key");
        } else if (section == "verify") {
            if (key == "tol_energy_rel") cfg.verify.tol_energy_rel = to_double(path, val);
            else if (key == "entropy_dx_coeff") cfg.verify.entropy_dx_coeff = to_double(path, val);
            else if (key == "weak_C") cfg.verify.weak_C = to_double(path, val);
            else if (key == "weak_safety") cfg.verify.weak_safety = to_double(path, val);
            else if (key == "defect_ceiling") cfg.verify.defect_ceiling = to_double(path, val);
            else if (key == "s0") cfg.verify.s0 = to_double(path, val);
            else if (key == "min_principle_tol") cfg.verify.min_principle_tol = to_double(path, val);
            else if (key == "K_space") cfg.K_space = static_cast<int>(to_long(path, val));
            else if (key == "K_time") cfg.K_time = static_cast<int>(to_long(path, val));
            else throw ConfigError(path + ": unknown key");
        } else if (section == "strong") {
            cfg.strong.enabled = true;
            if (key == "kind") {
                if (val != "contact")
                    throw ConfigError(path + ": only the traveling contact is built in");
            } else if (key == "amplitude") cfg.strong.amplitude = to_double(path, val);
            else if (key == "speed") cfg.strong.speed = to_double(path, val);
            else if (key == "pressure") cfg.strong.pressure = to_double(path, val);
            else throw ConfigError(path + ": unknown key");
        } else if (section == "output") {
            if (key == "dir") cfg.output_dir = val;
            else throw ConfigError(path + ": unknown key");
        } else {
            throw ConfigError("unknown section [" + section + "]");
        }
    }

    if (have_cv && have_gamma)
        throw ConfigError("gas: give either c_v or gamma, not both");
    cfg.gas = have_gamma ? GasParams::from_gamma(gamma) : GasParams::from_cv(cv);
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

struct IcPoint {
    double rho, u, theta;
};

IcPoint ic_point(const ExperimentConfig& cfg, const Grid& g, double x) {
    const IcSpec& ic = cfg.ic;
    const double L = g.length[0];
    IcPoint p{1.0, 0.0, 1.0};
    switch (ic.kind) {
        case IcKind::Sod: {
            p.rho = x < 0.5 * L ? 1.0 : 0.125;
            const double pr = x < 0.5 * L ? 1.0 : 0.1;
            p.u = 0.0;
            p.theta = pr / p.rho;
            return p;
        }
        case IcKind::Contact: {
            p.rho = 1.0 + ic.amplitude * std::sin(2.0 * kPi * x / L);
            p.u = ic.velocity;
            break;
        }
        case IcKind::Oscillatory: {
            p.rho = 1.0 + ic.amplitude * std::sin(2.0 * kPi * ic.wavenumber * x / L);
            p.u = ic.velocity * std::sin(2.0 * kPi * x / L);
            break;
        }
        case IcKind::Table:
            throw ConfigError("ic.path: table initial data handled by the caller");
    }
    if (ic.entropy_base != 0.0 || ic.entropy_amplitude != 0.0) {
        const double s = ic.entropy_base +
                         ic.entropy_amplitude * std::sin(4.0 * kPi * x / L);
        p.theta = std::pow(p.rho * std::exp(s), 1.0 / cfg.gas.c_v);
    } else {
        p.theta = ic.pressure / p.rho;
    }
    return p;
}

std::vector<IcPoint> table_points(const ExperimentConfig& cfg, const Grid& g) {
    std::ifstream in(cfg.ic.table_path);
    if (!in) throw ConfigError("ic.path: cannot open table '" + cfg.ic.table_path + "'");
    std::vector<IcPoint> pts;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line.front() == '#' || line.front() == 'x') continue;
        std::stringstream ss(line);
        std::string tok;
        double vals[4];
        int k = 0;
        while (std::getline(ss, tok, ',') && k < 4) vals[k++] = to_double("ic.table", trim(tok));
        if (k != 4) throw ConfigError("ic.path: table rows must be x,rho,u,p");
        pts.push_back({vals[1], vals[2], vals[3] / vals[1]});
    }
    if (static_cast<int>(pts.size()) != g.cells())
        throw ConfigError("ic.path: table must provide one row per cell (" +
                          std::to_string(g.cells()) + ")");
    return pts;
}

} // namespace

ConsField build_initial_conservative(const ExperimentConfig& cfg, const Grid& grid) {
    ConsField f;
    f.resize(grid.cells());
    std::vector<IcPoint> table;
    if (cfg.ic.kind == IcKind::Table) table = table_points(cfg, grid);
    for (int i = 0; i < grid.cells(); ++i) {
        const IcPoint p = cfg.ic.kind == IcKind::Table
                              ? table[i]
                              : ic_point(cfg, grid, grid.center(0, grid.ix(i)));
        f.set_state(i, primitive_to_conservative(
                           make_primitive(p.rho, {p.u, 0, 0}, p.theta, cfg.gas), cfg.gas));
    }
    return f;
}

NsField build_initial_ns(const ExperimentConfig& cfg, const Grid& grid) {
    NsField f;
    f.resize(grid.cells());
    std::vector<IcPoint> table;
    if (cfg.ic.kind == IcKind::Table) table = table_points(cfg, grid);
    for (int i = 0; i < grid.cells(); ++i) {
        const IcPoint p = cfg.ic.kind == IcKind::Table
                              ? table[i]
                              : ic_point(cfg, grid, grid.center(0, grid.ix(i)));
        f.rho[i] = p.rho;
        f.Z[i] = std::pow(p.rho * p.theta, 1.0 / cfg.gas.gamma);
        f.mx[i] = p.rho * p.u;
    }
    return f;
}

std::string config_echo(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "[experiment]\n";
    os << "model = " << model_name(cfg.model) << "\n";
    os << "t_end = " << format_double(cfg.t_end) << "\n";
    os << "cfl = " << format_double(cfg.cfl) << "\n";
    os << "sample_dt = " << format_double(cfg.sample_dt) << "\n";
    os << "epsilon_list = ";
    for (std::size_t i = 0; i < cfg.epsilon_list.size(); ++i)
        os << (i ? ", " : "") << format_double(cfg.epsilon_list[i]);
    os << "\nseed = " << cfg.seed << "\n";
    os << "workers = " << cfg.workers << "\n";
    os << "[gas]\nc_v = " << format_double(cfg.gas.c_v) << "\n";
    os << "[grid]\ndim = " << cfg.dim << "\nn = " << cfg.n
       << "\nlength = " << format_double(cfg.length)
       << "\nbc = " << (cfg.bc == Bc::Periodic ? "periodic" : "slip-wall") << "\n";
    os << "[ic]\nkind = ";
    switch (cfg.ic.kind) {
        case IcKind::Sod: os << "sod"; break;
        case IcKind::Contact: os << "contact"; break;
        case IcKind::Oscillatory: os << "oscillatory"; break;
        case IcKind::Table: os << "table"; break;
    }
    os << "\namplitude = " << format_double(cfg.ic.amplitude)
       << "\nvelocity = " << format_double(cfg.ic.velocity)
       << "\npressure = " << format_double(cfg.ic.pressure)
       << "\nwavenumber = " << cfg.ic.wavenumber
       << "\nentropy_base = " << format_double(cfg.ic.entropy_base)
       << "\nentropy_amplitude = " << format_double(cfg.ic.entropy_amplitude) << "\n";
    if (!cfg.ic.table_path.empty()) os << "path = " << cfg.ic.table_path << "\n";
    os << "[chi]\ns0 = " << format_double(cfg.chi_s0) << "\nks = ";
    for (std::size_t i = 0; i < cfg.chi_ks.size(); ++i)
        os << (i ? ", " : "") << format_double(cfg.chi_ks[i]);
    os << "\nsmooth = " << (cfg.chi_smooth ? "true" : "false") << "\n";
    if (cfg.model == ModelTag::NsEntropy)
        os << "[ns]\nbeta = " << format_double(cfg.ns.beta)
           << "\nmu = " << format_double(cfg.ns.mu)
           << "\neta = " << format_double(cfg.ns.eta) << "\n";
    if (cfg.model == ModelTag::Brenner)
        os << "[brenner]\nkappa_coeff = " << format_double(cfg.brenner.kappa_coeff)
           << "\nmu_coeff = " << format_double(cfg.brenner.mu_coeff)
           << "\ns0 = " << format_double(cfg.brenner.s0) << "\n";
    os << "[output]\ndir = " << cfg.output_dir << "\n";
    return os.str();
}

} // namespace mvgas
