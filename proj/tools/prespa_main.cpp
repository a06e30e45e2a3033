// Command-line front end: configuration ingestion, experiment orchestration,
// result emission. Exit codes: 0 success, 2 configuration error, 3 numerical
// failure.

#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "prespa/budget.hpp"
#include "prespa/cascade.hpp"
#include "prespa/codes.hpp"
#include "prespa/config.hpp"
#include "prespa/heating.hpp"
#include "prespa/io.hpp"
#include "prespa/planner.hpp"
#include "prespa/solver.hpp"
#include "prespa/tomography.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace prespa;

namespace {

struct CliState {
    std::string config_path = "configs/default.json";
    std::string out_dir = ".";
    std::string data_path;
    int jobs = 1;
    double tol = -1.0;
};

json meta_json(const RunConfig& cfg, const std::string& command) {
    return json{{"tool", std::string("prespa ") + kVersion},
                {"command", command},
                {"config_hash", cfg.hash},
                {"units", kUnitNote}};
}

RunConfig load(const CliState& st) {
    RunConfig cfg = load_config(st.config_path);
    if (st.tol > 0.0) cfg.solver.rel_tol = st.tol;
    return cfg;
}

std::string out_path(const CliState& st, const std::string& name) {
    fs::create_directories(st.out_dir);
    return (fs::path(st.out_dir) / name).string();
}

int cmd_simulate(const CliState& st) {
    RunConfig cfg = load(st);
    const OutputMeta meta{cfg.hash, "simulate"};
    if (cfg.simulate.mode == "conversion") {
        const TimeGrid grid(0.0, cfg.simulate.t_end_us, cfg.simulate.n_points);
        const ConversionCurve curve = conversion_curve(cfg.system, cfg.drives,
                                                       cfg.simulate.initial_fock, grid, cfg.dims,
                                                       cfg.solver);
        std::vector<std::vector<double>> rows;
        for (size_t k = 0; k < curve.times.size(); ++k)
            rows.push_back({curve.times[k], curve.converted[k], curve.p_target_g[k], curve.p_e[k],
                            curve.p_f[k]});
        const std::string csv =
            out_path(st, "conversion_n" + std::to_string(cfg.simulate.initial_fock) + ".csv");
        write_csv(csv, meta, {"time_us", "converted", "p_target_g", "p_e", "p_f"}, rows);
        json summary = meta_json(cfg, "simulate");
        summary["initial_fock"] = cfg.simulate.initial_fock;
        summary["halftime_us"] = curve.halftime_us;
        summary["converted_final"] = curve.converted.back();
        write_text_file(out_path(st, "conversion_summary.json"), summary.dump(2) + "\n");
        std::printf("conversion from |%d>: halftime = %s us, converted(%g us) = %.4f\n",
                    cfg.simulate.initial_fock,
                    curve.halftime_us < 0 ? "n/a" : format_double(curve.halftime_us).c_str(),
                    cfg.simulate.t_end_us, curve.converted.back());
    } else {
        const LindbladModel model =
            build_effective_model(cfg.lifetime.kappa_cor_per_us, cfg.system, cfg.dims.n_cav,
                                  cfg.lifetime.cavity_dephasing);
        const LogicalCode code = binomial_code(cfg.dims.n_cav);
        const TimeGrid grid(0.0, cfg.simulate.t_end_us, cfg.simulate.n_points);
        const LifetimeResult res = logical_lifetime(model, code, grid, cfg.solver);
        std::vector<std::vector<double>> rows;
        for (size_t k = 0; k < res.times.size(); ++k)
            rows.push_back({res.times[k], res.pole_curve[k], res.equator_curve[k]});
        write_csv(out_path(st, "logical_curves.csv"), meta, {"time_us", "pole_avg", "equator_avg"},
                  rows);
        std::printf("logical evolution written; tau_process = %.2f us\n", res.fit.tau_process);
    }
    return 0;
}

int cmd_sweep(const CliState& st) {
    RunConfig cfg = load(st);
    const double kappa = kTwoPi * cfg.system.kappa_r_mhz;
    const RateLandscape ls = sweep_landscape(
        kappa * cfg.sweep.omega1_lo_frac, kappa * cfg.sweep.omega1_hi_frac,
        kappa * cfg.sweep.omega2_lo_frac, kappa * cfg.sweep.omega2_hi_frac, kappa,
        cfg.sweep.n_grid, st.jobs);
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < ls.omega1_axis.size(); ++i)
        for (size_t j = 0; j < ls.omega2_axis.size(); ++j)
            rows.push_back({ls.omega1_axis[i], ls.omega2_axis[j], ls.rates[i][j],
                            double(ls.bifurcation_mask[i][j])});
    const OutputMeta meta{cfg.hash, "sweep"};
    write_csv(out_path(st, "rate_landscape.csv"), meta,
              {"omega1_rad_per_us", "omega2_rad_per_us", "rate_per_us", "oscillatory"}, rows);
    std::printf("argmax (non-oscillatory): rate = %.4f /us at omega1 = %.4f (kappa/%.2f), "
                "omega2 = %.4f (kappa/%.2f)\n",
                ls.argmax_non_oscillatory.rate, ls.argmax_non_oscillatory.omega1,
                kappa / ls.argmax_non_oscillatory.omega1, ls.argmax_non_oscillatory.omega2,
                kappa / ls.argmax_non_oscillatory.omega2);
    return 0;
}

int cmd_lifetime(const CliState& st) {
    RunConfig cfg = load(st);
    const OutputMeta meta{cfg.hash, "lifetime"};
    const TimeGrid grid(0.0, cfg.lifetime.t_end_us, cfg.lifetime.n_points);
    json out = meta_json(cfg, "lifetime");
    out["encoding"] = cfg.lifetime.encoding;
    out["corrected"] = cfg.lifetime.corrected;
    if (cfg.lifetime.encoding == "binomial" && !cfg.lifetime.corrected) {
        const LindbladModel model =
            build_effective_model(0.0, cfg.system, cfg.dims.n_cav, cfg.lifetime.cavity_dephasing);
        const UncorrectedDecay dec =
            uncorrected_lifetime(model, binomial_code(cfg.dims.n_cav), grid, cfg.solver);
        out["t_1e_us"] = dec.t_1e_us;
        std::vector<std::vector<double>> rows;
        for (size_t k = 0; k < dec.times.size(); ++k)
            rows.push_back({dec.times[k], dec.process_fidelity_curve[k]});
        write_csv(out_path(st, "uncorrected_decay.csv"), meta, {"time_us", "process_fidelity"},
                  rows);
        std::printf("uncorrected binomial 1/e time: %.2f us\n", dec.t_1e_us);
    } else {
        // the fock01 reference is always the free cavity, with T2a entering
        // through its dephasing channel
        const bool fock = cfg.lifetime.encoding == "fock01";
        const double kcor = (!fock && cfg.lifetime.corrected) ? cfg.lifetime.kappa_cor_per_us : 0.0;
        const LindbladModel model = build_effective_model(
            kcor, cfg.system, cfg.dims.n_cav, fock ? true : cfg.lifetime.cavity_dephasing);
        const LogicalCode code = cfg.lifetime.encoding == "fock01"
                                     ? fock01_code(cfg.dims.n_cav)
                                     : binomial_code(cfg.dims.n_cav);
        const LifetimeResult res = logical_lifetime(model, code, grid, cfg.solver);
        out["T_p_us"] = res.fit.T_p;
        out["T_p_stderr_us"] = res.fit.T_p_stderr;
        out["T_eq_us"] = res.fit.T_eq;
        out["T_eq_stderr_us"] = res.fit.T_eq_stderr;
        out["tau_process_us"] = res.fit.tau_process;
        out["pole_fit_sse"] = res.fit.pole_residual;
        out["equator_fit_sse"] = res.fit.equator_residual;
        std::vector<std::vector<double>> rows;
        for (size_t k = 0; k < res.times.size(); ++k)
            rows.push_back({res.times[k], res.pole_curve[k], res.equator_curve[k]});
        write_csv(out_path(st, "lifetime_curves.csv"), meta,
                  {"time_us", "pole_avg", "equator_avg"}, rows);
        std::printf("%s %s: T_p = %.1f us, T_eq = %.1f us, tau_process = %.1f us\n",
                    cfg.lifetime.encoding.c_str(), cfg.lifetime.corrected ? "corrected" : "free",
                    res.fit.T_p, res.fit.T_eq, res.fit.tau_process);
    }
    write_text_file(out_path(st, "lifetime.json"), out.dump(2) + "\n");
    return 0;
}

int cmd_budget(const CliState& st) {
    RunConfig cfg = load(st);
    const ErrorBudget passive =
        passive_budget(cfg.system, cfg.budget.kappa_cor_per_us, cfg.budget.nbar,
                       cfg.budget.gamma_up_per_ms, cfg.budget.distortion_loss_per_cycle,
                       cfg.drives.omega2_khz);
    const ErrorBudget active =
        active_budget(cfg.system, cfg.budget.active, cfg.budget.nbar, cfg.budget.gamma_up0_per_ms);
    const BudgetComparison cmp = compare(passive, active);
    json out = meta_json(cfg, "budget");
    for (const ErrorBudget* b : {&passive, &active}) {
        json rows = json::array();
        for (const auto& r : b->rows)
            rows.push_back({{"channel", r.channel},
                            {"rate_per_ms", r.rate_per_ms},
                            {"formula", r.formula},
                            {"reference_per_ms", r.reference_per_ms ? json(*r.reference_per_ms) : json()},
                            {"discrepancy_flag", r.discrepancy_flag}});
        out[b->scheme] = {{"rows", rows},
                          {"total_per_ms", b->total_per_ms},
                          {"implied_lifetime_us", b->implied_lifetime_us}};
    }
    write_text_file(out_path(st, "budget.json"), out.dump(2) + "\n");
    write_text_file(out_path(st, "budget_table.txt"), cmp.table);
    std::fputs(cmp.table.c_str(), stdout);
    return 0;
}

int cmd_wigner(const CliState& st) {
    RunConfig cfg = load(st);
    const int d = cfg.wigner.n_cav;
    StateVector psi = fock_state(0, d);
    if (cfg.wigner.state == "binomial_zero") psi = binomial_code(d).zero_l;
    else if (cfg.wigner.state == "binomial_one") psi = binomial_code(d).one_l;
    else if (cfg.wigner.state.rfind("fock:", 0) == 0)
        psi = fock_state(std::stoi(cfg.wigner.state.substr(5)), d);
    else throw ConfigError("wigner.state must be binomial_zero, binomial_one or fock:<n>");
    const WignerMap map =
        wigner(DensityMatrix::from_state(psi), cfg.wigner.half_extent, cfg.wigner.n_side);
    if (map.truncation_warning)
        std::fprintf(stderr, "warning: wigner truncation %d is small for this grid\n", d);
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < map.re_axis.size(); ++i)
        for (size_t j = 0; j < map.im_axis.size(); ++j)
            rows.push_back({map.re_axis[i], map.im_axis[j], map.values[i][j]});
    const OutputMeta meta{cfg.hash, "wigner"};
    write_csv(out_path(st, "wigner.csv"), meta, {"re_alpha", "im_alpha", "w"}, rows);
    std::printf("wigner map written (%zu points, grid integral = %.4f)\n", rows.size(),
                map.grid_integral());
    return 0;
}

int cmd_plan(const CliState& st) {
    RunConfig cfg = load(st);
    DrivePlan plan = comb_frequencies(cfg.system, cfg.plan.targets);
    const double ss1 = stark_shift({cfg.plan.beta1}, cfg.system.alpha_q_mhz);
    const double ss2 = stark_shift({cfg.plan.beta2}, cfg.system.alpha_q_mhz);
    plan.stark_shift_total_khz =
        stark_shift(std::vector<double>(cfg.plan.targets.size(), cfg.plan.beta1),
                    cfg.system.alpha_q_mhz) +
        stark_shift(std::vector<double>(cfg.plan.targets.size(), cfg.plan.beta2),
                    cfg.system.alpha_q_mhz);
    for (size_t k = 0; k < cfg.plan.targets.size(); ++k) {
        plan.omega1_khz.push_back(rabi_from_stark(ss1, cfg.system.chi_ge_mhz, int(k), 1));
        plan.omega2_khz.push_back(rabi_from_stark(ss2, cfg.system.chi_qr_mhz, 0, 2));
        plan.beta.push_back(cfg.plan.beta1);
    }
    for (size_t k = 0; k < cfg.plan.targets.size(); ++k) plan.beta.push_back(cfg.plan.beta2);
    const auto warnings = collision_check(plan, cfg.system, cfg.plan.guard_band_mhz);

    json out = meta_json(cfg, "plan");
    out["band1_mhz"] = plan.band1_mhz;
    out["band2_mhz"] = plan.band2_mhz;
    out["stark_shift_total_khz"] = plan.stark_shift_total_khz;
    out["omega1_est_khz"] = plan.omega1_khz;
    out["omega2_est_khz"] = plan.omega2_khz;
    json tones = json::array();
    char line[160];
    std::string table = "stage  n   frequency (MHz)   rel. amplitude\n";
    for (const auto& t : plan.tones) {
        tones.push_back({{"stage", t.stage},
                         {"n", t.n},
                         {"frequency_mhz", t.frequency_mhz},
                         {"relative_amplitude", t.relative_amplitude}});
        std::snprintf(line, sizeof(line), "%5d %3d %17.3f %16.4f\n", t.stage, t.n,
                      t.frequency_mhz, t.relative_amplitude);
        table += line;
    }
    out["tones"] = tones;
    out["collision_warnings"] = warnings;
    write_text_file(out_path(st, "plan.json"), out.dump(2) + "\n");
    write_text_file(out_path(st, "plan_table.txt"), table);
    std::fputs(table.c_str(), stdout);
    for (const auto& w : warnings) std::printf("warning: %s\n", w.c_str());
    return 0;
}

int cmd_heating_fit(const CliState& st) {
    RunConfig cfg = load(st);
    if (st.data_path.empty()) throw ConfigError("heating-fit requires --data <csv>");
    std::vector<double> times;
    std::vector<std::array<double, 3>> pops;
    read_population_csv(st.data_path, times, pops);
    const HeatingFit fit = fit_heating_rate(times, pops, cfg.heating.T1ge_us, cfg.heating.T1ef_us);
    json out = meta_json(cfg, "heating-fit");
    out["r"] = fit.r;
    out["gamma_up_per_ms"] = fit.gamma_up_per_ms;
    out["residual"] = fit.residual;
    write_text_file(out_path(st, "heating_fit.json"), out.dump(2) + "\n");
    std::printf("heating fit: r = %.5f, gamma_up = %.4f /ms (residual %.3e)\n", fit.r,
                fit.gamma_up_per_ms, fit.residual);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous bosonic-code error-correction simulator and analysis toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // accept global options after the subcommand name
    CliState st;
    app.add_option("--config", st.config_path, "configuration file (JSON)");
    app.add_option("--out", st.out_dir, "output directory");
    app.add_option("--jobs", st.jobs, "worker threads for sweeps");
    app.add_option("--tol", st.tol, "override integrator relative tolerance");

    auto* simulate = app.add_subcommand("simulate", "conversion dynamics or logical-state evolution");
    auto* sweep = app.add_subcommand("sweep", "drive-rate landscape of the cascaded dissipation");
    auto* lifetime = app.add_subcommand("lifetime", "logical lifetime fits");
    auto* budget = app.add_subcommand("budget", "analytic error budget");
    auto* wigner_cmd = app.add_subcommand("wigner", "Wigner map of a cavity state");
    auto* plan = app.add_subcommand("plan", "drive comb frequencies and amplitude relations");
    auto* heating = app.add_subcommand("heating-fit", "fit the transmon heating-rate model");
    heating->add_option("--data", st.data_path, "population CSV (pump_time_us,g,e,f)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(st);
        if (sweep->parsed()) return cmd_sweep(st);
        if (lifetime->parsed()) return cmd_lifetime(st);
        if (budget->parsed()) return cmd_budget(st);
        if (wigner_cmd->parsed()) return cmd_wigner(st);
        if (plan->parsed()) return cmd_plan(st);
        if (heating->parsed()) return cmd_heating_fit(st);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const IntegrationError& e) {
        std::fprintf(stderr, "numerical failure at t = %g us: %s\n", e.t_reached, e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 0;
}
