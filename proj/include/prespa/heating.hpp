#pragma once

// Phenomenological drive-induced transmon excitation model: readout-population
// linear solve, classical three-level rate-matrix evolution, and the
// single-parameter heating-rate fit.

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace prespa {

/// Raw readout values for the transmon prepared in |g>, |e>, |f>.
struct ReadoutCalib {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    void validate() const;
};

/// Populations plus residual higher-state signal from the four-sequence readout.
struct PopulationSolve {
    double g = 0.0, e = 0.0, f = 0.0, residual = 0.0;
    double higher() const { return 1.0 - g - e - f; }
};

/// Solves g*A+e*B+f*C+R = D1, f*A+g*B+e*C+R = D2, f*A+e*B+g*C+R = D3,
/// e*A+g*B+f*C+R = D4 for (g, e, f, R).
PopulationSolve solve_populations(double d1, double d2, double d3, double d4,
                                  const ReadoutCalib& calib);

/// (background - data) / (A - B), the conservative converted-population estimator.
double scale_population_difference(double background, double data, const ReadoutCalib& calib);

/// Classical rate model: down rates 1/T1ge, 1/T1ef; up rates r/T1ge, r/T1ef.
struct RateModel {
    double T1ge_us = 50.0;
    double T1ef_us = 31.0;
    double r = 0.0;  // excitation/relaxation ratio, shared by both transitions

    Eigen::Matrix3d generator() const;  // columns sum to zero
    void validate() const;
};

/// Populations over {g,e,f} at the requested times (matrix exponential of the
/// generator); preserves total population and the simplex.
std::vector<std::array<double, 3>> evolve_rate_matrix(const RateModel& model,
                                                      const std::array<double, 3>& p0,
                                                      const std::vector<double>& times_us);

struct HeatingFit {
    double r = 0.0;
    double gamma_up_per_ms = 0.0;  // r / T1ge
    double residual = 0.0;
};

/// Least-squares fit of the single ratio r to population samples at the given
/// pump times; the first sample is the initial condition. gamma_up = r/T1ge.
HeatingFit fit_heating_rate(const std::vector<double>& times_us,
                            const std::vector<std::array<double, 3>>& observed, double T1ge_us,
                            double T1ef_us);

}  // namespace prespa
