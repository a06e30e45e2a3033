#pragma once

// Run configuration: one JSON document drives every subcommand. Unknown keys
// are rejected so typos fail loudly instead of silently using defaults.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "prespa/budget.hpp"
#include "prespa/model.hpp"
#include "prespa/solver.hpp"

namespace prespa {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SimulateConfig {
    std::string mode = "conversion";  // conversion | logical
    int initial_fock = 0;
    double t_end_us = 15.0;
    int n_points = 151;
};

struct SweepConfig {
    // ranges as fractions of the angular kappa_r
    double omega1_lo_frac = 0.01;
    double omega1_hi_frac = 0.2;
    double omega2_lo_frac = 0.05;
    double omega2_hi_frac = 0.5;
    int n_grid = 200;
};

struct LifetimeConfig {
    std::string encoding = "binomial";  // binomial | fock01
    bool corrected = true;
    double kappa_cor_per_us = 0.25;
    double t_end_us = 400.0;
    int n_points = 81;
    bool cavity_dephasing = false;  // used by the fock01 reference
};

struct BudgetConfig {
    double nbar = 3.0;
    double kappa_cor_per_us = 0.25;
    double gamma_up_per_ms = 0.7;
    double gamma_up0_per_ms = 0.3;
    double distortion_loss_per_cycle = 0.005;
    ActiveQecParams active{};
};

struct WignerConfig {
    std::string state = "binomial_zero";  // binomial_zero | binomial_one | fock:<n>
    int n_cav = 32;
    double half_extent = 3.2;
    int n_side = 81;
};

struct PlanConfig {
    std::vector<int> targets = {1, 3, 5};
    double beta1 = 0.0033;
    double beta2 = 0.011;
    double guard_band_mhz = 10.0;
};

struct HeatingConfig {
    double T1ge_us = 50.0;
    double T1ef_us = 31.0;
};

struct RunConfig {
    SystemParams system{};
    ModeDims dims{};
    DriveConfig drives{};
    SolverOptions solver{};
    SimulateConfig simulate{};
    SweepConfig sweep{};
    LifetimeConfig lifetime{};
    BudgetConfig budget{};
    WignerConfig wigner{};
    PlanConfig plan{};
    HeatingConfig heating{};

    /// Hash of the canonical serialized form; stamped into every output.
    std::string hash;
};

/// Parses and validates the configuration file. Throws ConfigError on missing
/// files, malformed JSON, unknown keys, or schema violations.
RunConfig load_config(const std::string& path);

/// Serializes the effective configuration (defaults applied) back to JSON.
std::string dump_config(const RunConfig& cfg);

/// Reads a population CSV with header pump_time_us,g,e,f ('#' lines ignored).
void read_population_csv(const std::string& path, std::vector<double>& times,
                         std::vector<std::array<double, 3>>& populations);

}  // namespace prespa
