#pragma once

// Four-wave-mixing drive planning: comb tone frequencies, Stark shifts,
// Rabi-rate relations, amplitude scaling and frequency-collision checks.
// All planner inputs and outputs are cyclic frequencies (MHz / kHz).

#include <string>
#include <vector>

#include "prespa/model.hpp"

namespace prespa {

struct DriveTone {
    int stage = 1;                  // 1: photon addition, 2: ancilla reset
    int n = 1;                      // target photon index (1, 3, 5, ...)
    double frequency_mhz = 0.0;
    double relative_amplitude = 1.0;
};

struct DrivePlan {
    std::vector<DriveTone> tones;
    double stark_shift_total_khz = 0.0;
    std::vector<double> omega1_khz;  // per stage-1 tone
    std::vector<double> omega2_khz;  // per stage-2 tone
    std::vector<double> beta;        // per-tone displacement parameters, stage 1 then stage 2

    double band1_mhz = 0.0;  // omega_a + 2*omega_q - alpha (stage-1 anchor)
    double band2_mhz = 0.0;  // omega_r - (2*omega_q - alpha)
};

/// Tone frequencies for the targets: stage 1 at band1 - n*chi_gf, stage 2 at
/// band2 + n*chi_gf, keeping omega_d1 + omega_d2 = omega_a + omega_r for every
/// pair. Stage-1 relative amplitudes scale as 1/sqrt(n) (n = 2k+1) to
/// compensate the bosonic factor; stage 2 is flat.
DrivePlan comb_frequencies(const SystemParams& params, const std::vector<int>& targets);

/// Total Stark shift 2*alpha_q * sum(|beta|^2), cyclic kHz out.
double stark_shift(const std::vector<double>& betas, double alpha_q_mhz);

/// Rabi rate sqrt((2n+1) * chi * stark) in kHz; chi is chi_ge for stage 1 and
/// chi_qr for stage 2; n is the comb position (target photon index 2n+1).
double rabi_from_stark(double stark_khz, double chi_mhz, int n, int stage);

/// Inverse route: beta = sqrt(stark / (2*alpha_q)).
double beta_from_stark(double stark_khz, double alpha_q_mhz);

/// Flags tones within the guard band of the mode frequencies, the e-f
/// transition, their two-photon subharmonics, or of each other.
std::vector<std::string> collision_check(const DrivePlan& plan, const SystemParams& params,
                                         double guard_band_mhz = 10.0);

}  // namespace prespa
