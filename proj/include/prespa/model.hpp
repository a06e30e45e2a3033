#pragma once

// Rotating-frame Hamiltonians and dissipator sets for the driven
// cavity-transmon-reservoir system, plus the single-mode model with the
// parity-selective photon-addition dissipator.
//
// Unit convention: every user-facing frequency is cyclic (MHz or kHz, matching
// how device parameters are quoted); builders multiply by 2*pi exactly once, so
// Hamiltonians come out in rad/us. Decay rates (1/T1, kappa_cor) are plain
// inverse microseconds. Collapse operators are returned pre-multiplied by
// sqrt(rate).

#include <optional>
#include <vector>

#include "prespa/hilbert.hpp"

namespace prespa {

constexpr double kTwoPi = 6.283185307179586476925287;

/// Device parameters; defaults reproduce the reference device table.
struct SystemParams {
    // mode frequencies (MHz, cyclic)
    double omega_q_mhz = 3482.9;
    double omega_a_mhz = 4657.9;
    double omega_r_mhz = 8725.0;
    // nonlinear couplings
    double alpha_q_mhz = 134.28;
    double chi_ge_mhz = 1.12;
    double chi_ef_mhz = 0.95;
    double chi_qr_mhz = 1.13;
    double chi_ar_khz = 9.3;
    double kerr_khz = 3.3;          // cavity self-Kerr K
    double chi_q_prime_khz = 1.9;   // 6th-order dispersive shift
    // decay and coherence
    double kappa_r_mhz = 0.58;
    double T1a_us = 136.0;
    double T2a_us = 235.0;
    double T1ge_us = 50.0;
    double T1ef_us = 31.0;
    double T2R_us = 53.0;
    double T2E_us = 70.0;
    double T2gf_us = 30.0;
    // thermal populations
    double p_e_thermal = 0.017;
    double p1_thermal = 0.006;

    double chi_gf_mhz() const { return chi_ge_mhz + chi_ef_mhz; }
    /// Transmon pure-dephasing rate 1/T2R - 1/(2 T1ge), in 1/us.
    double gamma_phi() const { return 1.0 / T2R_us - 0.5 / T1ge_us; }
    /// g-f pure-dephasing rate 1/T2gf - 1/(2 T1ef), clamped at zero.
    double gamma_phi_gf() const;
    /// Cavity pure-dephasing rate 1/T2a - 1/(2 T1a), clamped at zero.
    double gamma_phi_cavity() const;
    double kappa_a() const { return 1.0 / T1a_us; }

    void validate() const;
};

/// Drive comb: one Rabi rate per stage, shared across all targeted transitions.
struct DriveConfig {
    double omega1_khz = 55.0;   // |n-1,g,0> <-> |n,f,0>
    double omega2_khz = 160.0;  // |n,f,0>   <-> |n,g,1>
    std::vector<int> photon_targets = {1, 3, 5};
    double detuning_khz = 0.0;  // applied to the intermediate |n,f,0> manifold

    void validate(const ModeDims& dims) const;
};

/// Hamiltonian (rad/us) plus collapse operators (each scaled by sqrt(rate)).
struct LindbladModel {
    QuantumOperator hamiltonian;
    std::vector<QuantumOperator> collapse_ops;
    ModeDims dims;
};

struct CollapseOptions {
    bool cavity_loss = true;
    bool transmon_decay = true;
    bool reservoir_decay = true;
    bool transmon_dephasing = true;
    bool gf_dephasing = false;          // T2gf channel, off by default
    double gamma_up_per_us = 0.0;       // thermal |g>->|e> excitation, off by default
};

/// Static dispersive Hamiltonian (rotating frame, linear mode energies absent).
/// Terms: transmon anharmonicity, chi_ge and chi_gf dispersive shifts, cavity
/// self-Kerr, reservoir-transmon shift. chi_q_prime enters only when requested.
QuantumOperator build_static_hamiltonian(const SystemParams& params, const ModeDims& dims,
                                         bool include_chi_q_prime = false);

/// Resonant drive comb: sum over targets n of
///   2*pi*Omega1 |n,f,0><n-1,g,0| + 2*pi*Omega2 |n,g,1><n,f,0| + h.c.
/// plus an optional common detuning on the intermediate manifold.
QuantumOperator build_drive_hamiltonian(const DriveConfig& cfg, const ModeDims& dims);

/// Drive comb extended with the off-resonant photon-addition paths out of the
/// odd (code) states. Each non-targeted even-m path gets the nearest comb tone,
/// a bosonic-factor-scaled Omega1, and the tone's intermediate-state detuning;
/// the two-stage sum frequency stays resonant (matched omega_d1 + omega_d2).
QuantumOperator build_drive_hamiltonian_with_leakage(const DriveConfig& cfg,
                                                     const SystemParams& params,
                                                     const ModeDims& dims);

/// Dissipator set: cavity loss, transmon g-e and e-f decay, reservoir decay,
/// transmon pure dephasing, optional g-f dephasing and thermal excitation.
std::vector<QuantumOperator> build_collapse_ops(const SystemParams& params, const ModeDims& dims,
                                                const CollapseOptions& opts = {});

/// Full three-mode model: drive Hamiltonian plus default dissipators.
LindbladModel build_full_model(const SystemParams& params, const DriveConfig& cfg,
                               const ModeDims& dims, const CollapseOptions& opts = {});

/// Photon-addition operator sqrt(kappa_cor) * sum_n |2n+1><2n| (single mode).
QuantumOperator correction_operator(double kappa_cor, int dim);

/// Single-mode effective model: Kerr Hamiltonian with cavity loss and the
/// correction dissipator. kappa_cor = 0 drops the correction (uncorrected
/// cavity); include_cavity_dephasing adds sqrt(2*gamma_phi_cavity) * n.
LindbladModel build_effective_model(double kappa_cor, const SystemParams& params, int n_cav,
                                    bool include_cavity_dephasing = false);

}  // namespace prespa
