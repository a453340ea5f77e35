#include "mvgas/io.hpp"

#include <charconv>
#include <fstream>

namespace mvgas {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string trajectory_csv(const FieldTrajectory& traj) {
    const Grid& g = traj.grid;
    std::string out;
    out.reserve(traj.times.size() * g.cells() * 48);
    out += g.dim == 2 ? "t,x,y,rho,mx,my,E\n" : "t,x,rho,mx,E\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const std::string ts = format_double(traj.times[k]);
        for (int c = 0; c < g.cells(); ++c) {
            out += ts;
            out += ',';
            out += format_double(g.center(0, g.ix(c)));
            if (g.dim == 2) {
                out += ',';
                out += format_double(g.center(1, g.iy(c)));
            }
            out += ',';
            out += format_double(traj.states[k].rho[c]);
            out += ',';
            out += format_double(traj.states[k].mx[c]);
            if (g.dim == 2) {
                out += ',';
                out += format_double(traj.states[k].my[c]);
            }
            out += ',';
            out += format_double(traj.states[k].E[c]);
            out += '\n';
        }
    }
    return out;
}

namespace {

nlohmann::json atoms_json(const std::vector<Atom>& atoms, int dim) {
    nlohmann::json j;
    auto& rho = j["rho"] = nlohmann::json::array();
    auto& mx = j["mx"] = nlohmann::json::array();
    auto& E = j["E"] = nlohmann::json::array();
    auto& w = j["w"] = nlohmann::json::array();
    nlohmann::json my = nlohmann::json::array();
    for (const Atom& a : atoms) {
        rho.push_back(a.state.rho);
        mx.push_back(a.state.m.x);
        if (dim == 2) my.push_back(a.state.m.y);
        E.push_back(a.state.E);
        w.push_back(a.weight);
    }
    if (dim == 2) j["my"] = std::move(my);
    return j;
}

} // namespace

nlohmann::json measure_json(const EmpiricalYoungMeasure& U) {
    nlohmann::json j;
    j["schema"] = "mvgas.young_measure/1";
    j["grid"] = {{"dim", U.fine_grid.dim},
                 {"n", U.fine_grid.n[0]},
                 {"length", U.fine_grid.length[0]},
                 {"bc", U.fine_grid.bc == Bc::Periodic ? "periodic" : "slip-wall"}};
    j["coarse"] = {{"nt", U.nt}, {"nx", U.coarse_grid.n[0]}, {"ny", U.coarse_grid.n[1]}};
    j["block_times"] = U.block_times;
    auto& cells = j["cells"] = nlohmann::json::array();
    for (int b = 0; b < U.nt; ++b)
        for (int c = 0; c < U.space_cells(); ++c) {
            nlohmann::json cell;
            cell["it"] = b;
            cell["ix"] = U.coarse_grid.ix(c);
            if (U.coarse_grid.dim == 2) cell["iy"] = U.coarse_grid.iy(c);
            cell["atoms"] = atoms_json(U.cells[U.cell_index(b, c)], U.coarse_grid.dim);
            cells.push_back(std::move(cell));
        }
    auto& init = j["initial"] = nlohmann::json::array();
    for (int c = 0; c < U.space_cells(); ++c) {
        nlohmann::json cell;
        cell["ix"] = U.coarse_grid.ix(c);
        if (U.coarse_grid.dim == 2) cell["iy"] = U.coarse_grid.iy(c);
        cell["atoms"] = atoms_json(U.initial[c], U.coarse_grid.dim);
        init.push_back(std::move(cell));
    }
    return j;
}

namespace {

nlohmann::json clause_json(const ClauseResult& c) {
    return {{"names", c.names},
            {"residuals", c.values},
            {"tolerance", c.tolerance},
            {"worst", c.worst},
            {"pass", c.pass}};
}

} // namespace

nlohmann::json report_json(const VerificationReport& rep) {
    nlohmann::json j;
    j["schema"] = "mvgas.verification/1";
    j["continuity"] = clause_json(rep.continuity);
    j["momentum"] = clause_json(rep.momentum);
    j["momentum"]["concentration_allowance_mass"] = rep.concentration_mass;
    j["energy"] = clause_json(rep.energy);
    nlohmann::json entropy = nlohmann::json::array();
    for (const auto& e : rep.entropy)
        entropy.push_back({{"chi", e.chi}, {"phi", e.phi}, {"margin", e.margin}});
    j["entropy"] = {{"margins", std::move(entropy)},
                       {"tolerance", rep.entropy_tolerance},
                       {"pass", rep.entropy_pass}};
    j["defect_bound"] = {{"ratio", rep.defect_ratio},
                      {"ceiling", rep.defect_ceiling},
                      {"concentration_mass", rep.concentration_mass},
                      {"pass", rep.defect_pass}};
    j["min_principle"] = {{"deficit", rep.min_deficit},
                          {"tolerance", rep.min_tolerance},
                          {"s0", rep.s0_used},
                          {"pass", rep.min_pass}};
    j["weak_threshold"] = rep.weak_threshold;
    j["pass"] = rep.all_pass;
    return j;
}

nlohmann::json defect_json(const DefectLedger& led) {
    nlohmann::json j;
    j["schema"] = "mvgas.defect/1";
    j["times"] = led.times;
    j["energy_defect"] = led.energy_defect;
    j["member_epsilon"] = led.member_epsilon;
    j["member_gap"] = led.member_gap;
    j["concentration_mass"] = led.concentration_mass;
    return j;
}

std::string weak_strong_csv(const WeakStrongSeries& s) {
    std::string out = "t,relative_energy,L1_rho,L1_m,L1_E\n";
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        out += format_double(s.times[k]);
        out += ',';
        out += format_double(s.rel_energy[k]);
        out += ',';
        out += format_double(s.l1_rho[k]);
        out += ',';
        out += format_double(s.l1_m[k]);
        out += ',';
        out += format_double(s.l1_E[k]);
        out += '\n';
    }
    return out;
}

nlohmann::json weak_strong_json(const WeakStrongReport& rep) {
    nlohmann::json j;
    j["schema"] = "mvgas.weak_strong/1";
    auto& members = j["members"] = nlohmann::json::array();
    for (const auto& s : rep.members)
        members.push_back({{"epsilon", s.epsilon},
                           {"max_relative_energy", s.max_rel_energy},
                           {"max_L1_rho", s.max_l1_rho},
                           {"max_L1_m", s.max_l1_m},
                           {"max_L1_E", s.max_l1_E},
                           {"gronwall_C", s.gronwall_C}});
    j["decay_order"] = {{"relative_energy", rep.order_rel_energy},
                        {"L1_rho", rep.order_l1_rho},
                        {"L1_m", rep.order_l1_m},
                        {"L1_E", rep.order_l1_E}};
    return j;
}

nlohmann::json scaling_json(const ScalingReport& rep) {
    nlohmann::json j;
    j["schema"] = "mvgas.scaling/1";
    j["epsilons"] = rep.epsilons;
    j["magnitudes"] = {{"mass_grad", rep.magnitudes[0]},
                       {"convective", rep.magnitudes[1]},
                       {"stress", rep.magnitudes[2]},
                       {"heat_grad", rep.magnitudes[3]}};
    j["slopes"] = {{"mass_grad", rep.slopes[0]},
                   {"convective", rep.slopes[1]},
                   {"stress", rep.slopes[2]},
                   {"heat_grad", rep.slopes[3]}};
    j["threshold"] = rep.threshold;
    j["pass"] = rep.pass;
    return j;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("write_file: cannot open " + path);
    out << content;
}

} // namespace mvgas
