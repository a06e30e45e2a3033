#include "prespa/budget.hpp"

#include <cmath>
#include <cstdio>

namespace prespa {

void ActiveQecParams::validate() const {
    if (!(tau_ex_us > 0.0 && tau_cyc_us > 0.0))
        throw std::invalid_argument("active-QEC times must be positive");
    for (double e : {eps_meas, eps_j, eps_nj})
        if (e < 0.0 || e > 1.0) throw std::invalid_argument("infidelities must lie in [0,1]");
}

void ErrorBudget::finalize() {
    total_per_ms = 0.0;
    for (const auto& r : rows) total_per_ms += r.rate_per_ms;
    implied_lifetime_us = total_per_ms > 0.0 ? 1000.0 / total_per_ms : 0.0;
    for (auto& r : rows) {
        if (r.reference_per_ms && *r.reference_per_ms > 0.0)
            r.discrepancy_flag = std::abs(r.rate_per_ms - *r.reference_per_ms) >
                                 0.30 * *r.reference_per_ms;
    }
}

const BudgetRow* ErrorBudget::find(const std::string& channel) const {
    for (const auto& r : rows)
        if (r.channel == channel) return &r;
    return nullptr;
}

namespace {
double angular_mhz(double f_mhz) { return kTwoPi * f_mhz; }
}

ErrorBudget passive_budget(const SystemParams& params, double kappa_cor, double nbar,
                           double gamma_up_per_ms, double distortion_loss_per_cycle,
                           double omega2_khz) {
    params.validate();
    if (!(kappa_cor > 0.0 && nbar > 0.0))
        throw std::invalid_argument("kappa_cor and nbar must be positive");
    const double ka = params.kappa_a();                      // 1/us
    const double chi_gf = angular_mhz(params.chi_gf_mhz());  // rad/us
    const double omega2 = angular_mhz(omega2_khz * 1e-3);    // rad/us, reset-drive rate
    const double t_phi = 1.0 / params.gamma_phi();           // us
    const double kerr = angular_mhz(params.kerr_khz * 1e-3); // rad/us

    ErrorBudget b;
    b.scheme = "passive";
    b.rows = {
        {"double photon loss", 1e3 * nbar * nbar * ka * ka / kappa_cor,
         "nbar^2 kappa_a^2 / kappa_cor", 1.8, false},
        {"ancilla relaxation", 1e3 * (nbar * ka) / (5.0 * kappa_cor * params.T1ef_us),
         "nbar kappa_a / (5 kappa_cor T1ef)", 0.6, false},
        {"unwanted corrections", 1e3 * 4.0 * std::pow(kappa_cor, 3) / (chi_gf * chi_gf),
         "4 kappa_cor^3 / chi_gf^2", 0.4, false},
        {"imperfect recovery", 1e3 * distortion_loss_per_cycle * kappa_cor,
         "distortion loss per cycle * kappa_cor", 1.3, false},
        {"storage mode nonlinearity",
         1e3 * (1.0 / 6.0) * std::pow(kerr / kappa_cor, 2) * nbar * ka,
         "(1/6)(K/kappa_cor)^2 nbar kappa_a", 0.1, false},
        {"ancilla spurious excitation", gamma_up_per_ms, "gamma_up0 + drive-induced excess", 0.7,
         false},
        {"ancilla dephasing",
         1e3 * (nbar * nbar * ka * ka) / (kappa_cor * omega2 * omega2 * t_phi * t_phi),
         "nbar^2 kappa_a^2 / (kappa_cor Omega2^2 Tphi^2)", std::nullopt, false},  // reference is only a bound
    };
    b.finalize();
    return b;
}

ErrorBudget active_budget(const SystemParams& params, const ActiveQecParams& aq, double nbar,
                          double gamma_up0_per_ms) {
    params.validate();
    aq.validate();
    if (!(nbar > 0.0)) throw std::invalid_argument("nbar must be positive");
    const double ka = params.kappa_a();
    const double kc = aq.kappa_cor();
    const double chi_ge = angular_mhz(params.chi_ge_mhz);
    const double t_phi = 1.0 / params.gamma_phi();
    const double kerr = angular_mhz(params.kerr_khz * 1e-3);

    ErrorBudget b;
    b.scheme = "active";
    b.rows = {
        {"double photon loss", 1e3 * nbar * nbar * ka * ka / kc, "nbar^2 kappa_a^2 / kappa_cor",
         1.8, false},
        {"ancilla relaxation", 1e3 * nbar * ka * (aq.tau_ex_us / params.T1ge_us),
         "nbar kappa_a (tau_ex / T1ge)", 0.5, false},
        {"unwanted corrections", 1e3 * 0.5 * aq.eps_meas * kc, "eps_meas kappa_cor / 2", 1.3,
         false},
        {"imperfect recovery", 1e3 * (0.5 * aq.eps_nj * kc + nbar * ka * aq.eps_j),
         "eps_nj kappa_cor / 2 + nbar kappa_a eps_j", 2.6, false},
        {"storage mode nonlinearity", 1e3 * (1.0 / 6.0) * std::pow(kerr / kc, 2) * nbar * ka,
         "(1/6)(K/kappa_cor)^2 nbar kappa_a", 0.1, false},
        {"ancilla spurious excitation", gamma_up0_per_ms, "gamma_up0", 0.3, false},
        {"ancilla dephasing", 1e3 * (M_PI * nbar * ka) / (chi_ge * t_phi),
         "pi nbar kappa_a / (chi_ge Tphi)", 0.2, false},
    };
    b.finalize();
    return b;
}

BudgetComparison compare(const ErrorBudget& passive, const ErrorBudget& active) {
    BudgetComparison cmp{passive, active, ""};
    char line[256];
    std::snprintf(line, sizeof(line), "%-28s %14s %14s %8s\n", "channel", "active (1/ms)",
                  "passive (1/ms)", "ratio");
    cmp.table += line;
    cmp.table += std::string(68, '-') + "\n";
    for (const auto& row : passive.rows) {
        const BudgetRow* arow = active.find(row.channel);
        const double a = arow ? arow->rate_per_ms : 0.0;
        const double ratio = row.rate_per_ms > 0.0 ? a / row.rate_per_ms : 0.0;
        std::snprintf(line, sizeof(line), "%-28s %14.3f %14.3f %8.2f%s\n", row.channel.c_str(), a,
                      row.rate_per_ms, ratio,
                      (row.discrepancy_flag || (arow && arow->discrepancy_flag)) ? "  [flagged]"
                                                                                 : "");
        cmp.table += line;
    }
    std::snprintf(line, sizeof(line), "%-28s %14.3f %14.3f\n", "total", active.total_per_ms,
                  passive.total_per_ms);
    cmp.table += line;
    std::snprintf(line, sizeof(line), "%-28s %11.1f us %11.1f us\n", "implied lifetime",
                  active.implied_lifetime_us, passive.implied_lifetime_us);
    cmp.table += line;
    return cmp;
}

}  // namespace prespa
