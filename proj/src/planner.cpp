#include "prespa/planner.hpp"

#include <cmath>

namespace prespa {

DrivePlan comb_frequencies(const SystemParams& params, const std::vector<int>& targets) {
    params.validate();
    if (targets.empty()) throw std::invalid_argument("targets must be non-empty");
    DrivePlan plan;
    plan.band1_mhz = params.omega_a_mhz + 2.0 * params.omega_q_mhz - params.alpha_q_mhz;
    plan.band2_mhz = params.omega_r_mhz - (2.0 * params.omega_q_mhz - params.alpha_q_mhz);
    for (int n : targets) {
        if (n < 1) throw std::invalid_argument("targets must be positive photon indices");
        DriveTone t1{1, n, plan.band1_mhz - n * params.chi_gf_mhz(), 1.0 / std::sqrt(double(n))};
        DriveTone t2{2, n, plan.band2_mhz + n * params.chi_gf_mhz(), 1.0};
        plan.tones.push_back(t1);
        plan.tones.push_back(t2);
    }
    return plan;
}

double stark_shift(const std::vector<double>& betas, double alpha_q_mhz) {
    if (!(alpha_q_mhz > 0.0)) throw std::invalid_argument("alpha_q must be positive");
    double sum = 0.0;
    for (double b : betas) sum += b * b;
    return 2.0 * (alpha_q_mhz * 1e3) * sum;  // kHz
}

double rabi_from_stark(double stark_khz, double chi_mhz, int n, int stage) {
    if (stark_khz < 0.0 || chi_mhz <= 0.0 || n < 0)
        throw std::invalid_argument("rabi_from_stark needs non-negative stark and positive chi");
    if (stage != 1 && stage != 2) throw std::invalid_argument("stage must be 1 or 2");
    return std::sqrt(double(2 * n + 1) * (chi_mhz * 1e3) * stark_khz);
}

double beta_from_stark(double stark_khz, double alpha_q_mhz) {
    if (stark_khz < 0.0 || alpha_q_mhz <= 0.0)
        throw std::invalid_argument("beta_from_stark needs non-negative stark and positive alpha");
    return std::sqrt(stark_khz / (2.0 * alpha_q_mhz * 1e3));
}

std::vector<std::string> collision_check(const DrivePlan& plan, const SystemParams& params,
                                         double guard_band_mhz) {
    std::vector<std::pair<std::string, double>> protected_freqs = {
        {"omega_a", params.omega_a_mhz},
        {"omega_q", params.omega_q_mhz},
        {"omega_r", params.omega_r_mhz},
        {"omega_ef", params.omega_q_mhz - params.alpha_q_mhz},
    };
    const size_t n_base = protected_freqs.size();
    for (size_t k = 0; k < n_base; ++k)
        protected_freqs.push_back({protected_freqs[k].first + "/2", protected_freqs[k].second / 2.0});

    std::vector<std::string> warnings;
    auto fmt = [](double f) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3f", f);
        return std::string(buf);
    };
    for (const auto& tone : plan.tones) {
        for (const auto& [name, f] : protected_freqs) {
            if (std::abs(tone.frequency_mhz - f) < guard_band_mhz)
                warnings.push_back("tone (stage " + std::to_string(tone.stage) + ", n=" +
                                   std::to_string(tone.n) + ") at " + fmt(tone.frequency_mhz) +
                                   " MHz collides with " + name + " at " + fmt(f) + " MHz");
        }
    }
    for (size_t a = 0; a < plan.tones.size(); ++a)
        for (size_t b = a + 1; b < plan.tones.size(); ++b) {
            const double da = std::abs(plan.tones[a].frequency_mhz - plan.tones[b].frequency_mhz);
            if (da < guard_band_mhz && da > 0.0 &&
                !(plan.tones[a].stage == plan.tones[b].stage))
                warnings.push_back("cross-stage tones closer than the guard band: " +
                                   fmt(plan.tones[a].frequency_mhz) + " MHz vs " +
                                   fmt(plan.tones[b].frequency_mhz) + " MHz");
            if (da == 0.0)
                warnings.push_back("two tones coincide at " + fmt(plan.tones[a].frequency_mhz) +
                                   " MHz");
        }
    return warnings;
}

}  // namespace prespa
