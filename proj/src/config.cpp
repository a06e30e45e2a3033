#include "prespa/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "prespa/io.hpp"

namespace prespa {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where, std::set<std::string> allowed) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <typename T>
void get_to(const json& j, const char* key, T& target) {
    if (j.contains(key)) {
        try {
            j.at(key).get_to(target);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
        }
    }
}

void parse_system(const json& j, SystemParams& p) {
    check_keys(j, "system",
               {"omega_q_mhz", "omega_a_mhz", "omega_r_mhz", "alpha_q_mhz", "chi_ge_mhz",
                "chi_ef_mhz", "chi_qr_mhz", "chi_ar_khz", "kerr_khz", "chi_q_prime_khz",
                "kappa_r_mhz", "T1a_us", "T2a_us", "T1ge_us", "T1ef_us", "T2R_us", "T2E_us",
                "T2gf_us", "p_e_thermal", "p1_thermal"});
    get_to(j, "omega_q_mhz", p.omega_q_mhz);
    get_to(j, "omega_a_mhz", p.omega_a_mhz);
    get_to(j, "omega_r_mhz", p.omega_r_mhz);
    get_to(j, "alpha_q_mhz", p.alpha_q_mhz);
    get_to(j, "chi_ge_mhz", p.chi_ge_mhz);
    get_to(j, "chi_ef_mhz", p.chi_ef_mhz);
    get_to(j, "chi_qr_mhz", p.chi_qr_mhz);
    get_to(j, "chi_ar_khz", p.chi_ar_khz);
    get_to(j, "kerr_khz", p.kerr_khz);
    get_to(j, "chi_q_prime_khz", p.chi_q_prime_khz);
    get_to(j, "kappa_r_mhz", p.kappa_r_mhz);
    get_to(j, "T1a_us", p.T1a_us);
    get_to(j, "T2a_us", p.T2a_us);
    get_to(j, "T1ge_us", p.T1ge_us);
    get_to(j, "T1ef_us", p.T1ef_us);
    get_to(j, "T2R_us", p.T2R_us);
    get_to(j, "T2E_us", p.T2E_us);
    get_to(j, "T2gf_us", p.T2gf_us);
    get_to(j, "p_e_thermal", p.p_e_thermal);
    get_to(j, "p1_thermal", p.p1_thermal);
}

}  // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    check_keys(j, "config root",
               {"system", "dims", "drives", "solver", "simulate", "sweep", "lifetime", "budget",
                "wigner", "plan", "heating"});
    RunConfig cfg;
    if (j.contains("system")) parse_system(j["system"], cfg.system);
    if (j.contains("dims")) {
        const json& d = j["dims"];
        check_keys(d, "dims", {"n_cav", "n_tmon", "n_res"});
        get_to(d, "n_cav", cfg.dims.n_cav);
        get_to(d, "n_tmon", cfg.dims.n_tmon);
        get_to(d, "n_res", cfg.dims.n_res);
    }
    if (j.contains("drives")) {
        const json& d = j["drives"];
        check_keys(d, "drives", {"omega1_khz", "omega2_khz", "photon_targets", "detuning_khz"});
        get_to(d, "omega1_khz", cfg.drives.omega1_khz);
        get_to(d, "omega2_khz", cfg.drives.omega2_khz);
        get_to(d, "photon_targets", cfg.drives.photon_targets);
        get_to(d, "detuning_khz", cfg.drives.detuning_khz);
    }
    if (j.contains("solver")) {
        const json& d = j["solver"];
        check_keys(d, "solver", {"rel_tol", "abs_tol"});
        get_to(d, "rel_tol", cfg.solver.rel_tol);
        get_to(d, "abs_tol", cfg.solver.abs_tol);
    }
    if (j.contains("simulate")) {
        const json& d = j["simulate"];
        check_keys(d, "simulate", {"mode", "initial_fock", "t_end_us", "n_points"});
        get_to(d, "mode", cfg.simulate.mode);
        get_to(d, "initial_fock", cfg.simulate.initial_fock);
        get_to(d, "t_end_us", cfg.simulate.t_end_us);
        get_to(d, "n_points", cfg.simulate.n_points);
        if (cfg.simulate.mode != "conversion" && cfg.simulate.mode != "logical")
            throw ConfigError("simulate.mode must be 'conversion' or 'logical'");
        if (cfg.simulate.n_points < 2) throw ConfigError("simulate.n_points must be >= 2");
        if (!(cfg.simulate.t_end_us > 0.0)) throw ConfigError("simulate.t_end_us must be positive");
    }
    if (j.contains("sweep")) {
        const json& d = j["sweep"];
        check_keys(d, "sweep",
                   {"omega1_lo_frac", "omega1_hi_frac", "omega2_lo_frac", "omega2_hi_frac",
                    "n_grid"});
        get_to(d, "omega1_lo_frac", cfg.sweep.omega1_lo_frac);
        get_to(d, "omega1_hi_frac", cfg.sweep.omega1_hi_frac);
        get_to(d, "omega2_lo_frac", cfg.sweep.omega2_lo_frac);
        get_to(d, "omega2_hi_frac", cfg.sweep.omega2_hi_frac);
        get_to(d, "n_grid", cfg.sweep.n_grid);
        if (cfg.sweep.n_grid < 1) throw ConfigError("sweep.n_grid must be >= 1");
    }
    if (j.contains("lifetime")) {
        const json& d = j["lifetime"];
        check_keys(d, "lifetime",
                   {"encoding", "corrected", "kappa_cor_per_us", "t_end_us", "n_points",
                    "cavity_dephasing"});
        get_to(d, "encoding", cfg.lifetime.encoding);
        get_to(d, "corrected", cfg.lifetime.corrected);
        get_to(d, "kappa_cor_per_us", cfg.lifetime.kappa_cor_per_us);
        get_to(d, "t_end_us", cfg.lifetime.t_end_us);
        get_to(d, "n_points", cfg.lifetime.n_points);
        get_to(d, "cavity_dephasing", cfg.lifetime.cavity_dephasing);
        if (cfg.lifetime.encoding != "binomial" && cfg.lifetime.encoding != "fock01")
            throw ConfigError("lifetime.encoding must be 'binomial' or 'fock01'");
    }
    if (j.contains("budget")) {
        const json& d = j["budget"];
        check_keys(d, "budget",
                   {"nbar", "kappa_cor_per_us", "gamma_up_per_ms", "gamma_up0_per_ms",
                    "distortion_loss_per_cycle", "active"});
        get_to(d, "nbar", cfg.budget.nbar);
        get_to(d, "kappa_cor_per_us", cfg.budget.kappa_cor_per_us);
        get_to(d, "gamma_up_per_ms", cfg.budget.gamma_up_per_ms);
        get_to(d, "gamma_up0_per_ms", cfg.budget.gamma_up0_per_ms);
        get_to(d, "distortion_loss_per_cycle", cfg.budget.distortion_loss_per_cycle);
        if (d.contains("active")) {
            const json& a = d["active"];
            check_keys(a, "budget.active", {"tau_ex_us", "eps_meas", "eps_j", "eps_nj", "tau_cyc_us"});
            get_to(a, "tau_ex_us", cfg.budget.active.tau_ex_us);
            get_to(a, "eps_meas", cfg.budget.active.eps_meas);
            get_to(a, "eps_j", cfg.budget.active.eps_j);
            get_to(a, "eps_nj", cfg.budget.active.eps_nj);
            get_to(a, "tau_cyc_us", cfg.budget.active.tau_cyc_us);
        }
    }
    if (j.contains("wigner")) {
        const json& d = j["wigner"];
        check_keys(d, "wigner", {"state", "n_cav", "half_extent", "n_side"});
        get_to(d, "state", cfg.wigner.state);
        get_to(d, "n_cav", cfg.wigner.n_cav);
        get_to(d, "half_extent", cfg.wigner.half_extent);
        get_to(d, "n_side", cfg.wigner.n_side);
    }
    if (j.contains("plan")) {
        const json& d = j["plan"];
        check_keys(d, "plan", {"targets", "beta1", "beta2", "guard_band_mhz"});
        get_to(d, "targets", cfg.plan.targets);
        get_to(d, "beta1", cfg.plan.beta1);
        get_to(d, "beta2", cfg.plan.beta2);
        get_to(d, "guard_band_mhz", cfg.plan.guard_band_mhz);
    }
    if (j.contains("heating")) {
        const json& d = j["heating"];
        check_keys(d, "heating", {"T1ge_us", "T1ef_us"});
        get_to(d, "T1ge_us", cfg.heating.T1ge_us);
        get_to(d, "T1ef_us", cfg.heating.T1ef_us);
    }

    try {
        cfg.system.validate();
        cfg.dims.validate();
        cfg.drives.validate(cfg.dims);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(dump_config(cfg))));
    cfg.hash = buf;
    return cfg;
}

std::string dump_config(const RunConfig& cfg) {
    json j;
    j["system"] = {{"omega_q_mhz", cfg.system.omega_q_mhz},
                   {"omega_a_mhz", cfg.system.omega_a_mhz},
                   {"omega_r_mhz", cfg.system.omega_r_mhz},
                   {"alpha_q_mhz", cfg.system.alpha_q_mhz},
                   {"chi_ge_mhz", cfg.system.chi_ge_mhz},
                   {"chi_ef_mhz", cfg.system.chi_ef_mhz},
                   {"chi_qr_mhz", cfg.system.chi_qr_mhz},
                   {"chi_ar_khz", cfg.system.chi_ar_khz},
                   {"kerr_khz", cfg.system.kerr_khz},
                   {"chi_q_prime_khz", cfg.system.chi_q_prime_khz},
                   {"kappa_r_mhz", cfg.system.kappa_r_mhz},
                   {"T1a_us", cfg.system.T1a_us},
                   {"T2a_us", cfg.system.T2a_us},
                   {"T1ge_us", cfg.system.T1ge_us},
                   {"T1ef_us", cfg.system.T1ef_us},
                   {"T2R_us", cfg.system.T2R_us},
                   {"T2E_us", cfg.system.T2E_us},
                   {"T2gf_us", cfg.system.T2gf_us},
                   {"p_e_thermal", cfg.system.p_e_thermal},
                   {"p1_thermal", cfg.system.p1_thermal}};
    j["dims"] = {{"n_cav", cfg.dims.n_cav}, {"n_tmon", cfg.dims.n_tmon}, {"n_res", cfg.dims.n_res}};
    j["drives"] = {{"omega1_khz", cfg.drives.omega1_khz},
                   {"omega2_khz", cfg.drives.omega2_khz},
                   {"photon_targets", cfg.drives.photon_targets},
                   {"detuning_khz", cfg.drives.detuning_khz}};
    j["solver"] = {{"rel_tol", cfg.solver.rel_tol}, {"abs_tol", cfg.solver.abs_tol}};
    j["simulate"] = {{"mode", cfg.simulate.mode},
                     {"initial_fock", cfg.simulate.initial_fock},
                     {"t_end_us", cfg.simulate.t_end_us},
                     {"n_points", cfg.simulate.n_points}};
    j["sweep"] = {{"omega1_lo_frac", cfg.sweep.omega1_lo_frac},
                  {"omega1_hi_frac", cfg.sweep.omega1_hi_frac},
                  {"omega2_lo_frac", cfg.sweep.omega2_lo_frac},
                  {"omega2_hi_frac", cfg.sweep.omega2_hi_frac},
                  {"n_grid", cfg.sweep.n_grid}};
    j["lifetime"] = {{"encoding", cfg.lifetime.encoding},
                     {"corrected", cfg.lifetime.corrected},
                     {"kappa_cor_per_us", cfg.lifetime.kappa_cor_per_us},
                     {"t_end_us", cfg.lifetime.t_end_us},
                     {"n_points", cfg.lifetime.n_points},
                     {"cavity_dephasing", cfg.lifetime.cavity_dephasing}};
    j["budget"] = {{"nbar", cfg.budget.nbar},
                   {"kappa_cor_per_us", cfg.budget.kappa_cor_per_us},
                   {"gamma_up_per_ms", cfg.budget.gamma_up_per_ms},
                   {"gamma_up0_per_ms", cfg.budget.gamma_up0_per_ms},
                   {"distortion_loss_per_cycle", cfg.budget.distortion_loss_per_cycle},
                   {"active",
                    {{"tau_ex_us", cfg.budget.active.tau_ex_us},
                     {"eps_meas", cfg.budget.active.eps_meas},
                     {"eps_j", cfg.budget.active.eps_j},
                     {"eps_nj", cfg.budget.active.eps_nj},
                     {"tau_cyc_us", cfg.budget.active.tau_cyc_us}}}};
    j["wigner"] = {{"state", cfg.wigner.state},
                   {"n_cav", cfg.wigner.n_cav},
                   {"half_extent", cfg.wigner.half_extent},
                   {"n_side", cfg.wigner.n_side}};
    j["plan"] = {{"targets", cfg.plan.targets},
                 {"beta1", cfg.plan.beta1},
                 {"beta2", cfg.plan.beta2},
                 {"guard_band_mhz", cfg.plan.guard_band_mhz}};
    j["heating"] = {{"T1ge_us", cfg.heating.T1ge_us}, {"T1ef_us", cfg.heating.T1ef_us}};
    return j.dump(2);
}

void read_population_csv(const std::string& path, std::vector<double>& times,
                         std::vector<std::array<double, 3>>& populations) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open data file: " + path);
    times.clear();
    populations.clear();
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.find("pump_time_us") == std::string::npos)
                throw ConfigError("population CSV must start with header pump_time_us,g,e,f");
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        std::array<double, 4> v{};
        char comma;
        if (!(ss >> v[0] >> comma >> v[1] >> comma >> v[2] >> comma >> v[3]))
            throw ConfigError("malformed population CSV row: " + line);
        times.push_back(v[0]);
        populations.push_back({v[1], v[2], v[3]});
    }
    if (times.size() < 2) throw ConfigError("population CSV needs at least two rows");
}

}  // namespace prespa
