#pragma once

// 3x3 non-Hermitian model of the two-stage cascaded dissipation
//   [[0, W1, 0], [W1*, chi, W2], [0, W2*, -i*kappa/2]]
// spanning {|n-1,g,0>, |n,f,0>, |n,g,1>}: eigenvalue analysis, effective-rate
// extraction, critical-damping location, rate landscapes, and the
// detuned-transition rate responsible for unwanted corrections.
//
// Rate convention: effective_rate returns 2*|Im lambda| of the slowest
// eigenvalue (smallest |Im|), the asymptotic population decay of the
// bottleneck mode. The conversion halftime of the full dynamics is governed by
// the transient as well; cascade_halftime integrates the amplitude equations
// for a direct comparison with conversion curves.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "prespa/hilbert.hpp"

namespace prespa {

/// All rates in this module are angular (rad/us); kappa is the energy decay
/// rate, i.e. 2*pi times the cyclic linewidth.
struct CascadeMatrix {
    Complex omega1 = 0.0;
    Complex omega2 = 0.0;
    double kappa = 0.0;
    double chi_detune = 0.0;

    Eigen::Matrix3cd matrix() const;
};

struct EffectiveRate {
    double rate = 0.0;       // 1/us, population decay of the slowest mode
    bool oscillatory = false;  // some eigenvalue pair split into distinct real parts
    bool exceptional = false;  // two eigenvalues numerically coalesced
};

Eigen::Vector3cd cascade_eigenvalues(const CascadeMatrix& m);
EffectiveRate effective_rate_detailed(const CascadeMatrix& m);
double effective_rate(const CascadeMatrix& m);

/// Analytic critical-damping point of the lower Lambda subsystem (Omega1 = 0):
/// the two coupled eigenvalues coalesce at Omega2 = kappa/4.
double lambda_critical(double kappa);
/// Numerical coalescence search (bisection on the real-part splitting of the
/// 2x2 block); agrees with kappa/4 to the bisection tolerance.
double lambda_critical_numeric(double kappa, double rel_tol = 1e-10);

struct RateLandscape {
    std::vector<double> omega1_axis;
    std::vector<double> omega2_axis;
    std::vector<std::vector<double>> rates;          // rates[i][j] at (omega1[i], omega2[j])
    std::vector<std::vector<uint8_t>> bifurcation_mask;  // 1 where real-part splitting detected
    struct { double rate = 0.0; double omega1 = 0.0; double omega2 = 0.0; } argmax_non_oscillatory;
};

/// Effective rate over a grid; bifurcation flagged where any eigenvalue real
/// part exceeds rel_tol * kappa (the spectrum's real parts sum to zero, so any
/// nonzero real part signals a split pair). `n_jobs` fans rows across threads.
RateLandscape sweep_landscape(double omega1_lo, double omega1_hi, double omega2_lo,
                              double omega2_hi, double kappa, int n_grid, int n_jobs = 1,
                              double rel_tol = 1e-9);

/// Effective rate of the detuned matrix; in the kappa >> W2 >> W1 limit it
/// approaches 4*W1^2*W2^2 / (chi^2*kappa) (prefactor recorded empirically).
double detuned_rate(double omega1, double omega2, double kappa, double chi);

/// Time for the sunk population 1 - |psi(t)|^2 of the non-Hermitian model to
/// reach 1/2 starting from the error state e1.
double cascade_halftime(const CascadeMatrix& m);

/// Population of e1 under Schrodinger evolution with the non-Hermitian matrix,
/// sampled on a uniform grid (independent cross-check path for the eigenvalue
/// route; integrated with classic RK4 at fixed fine step).
std::vector<double> nonhermitian_population(const CascadeMatrix& m, double t_end, int n_points);

}  // namespace prespa
