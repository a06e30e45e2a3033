#pragma once

// Small deterministic least-squares helpers used by the lifetime and heating fits.

#include <functional>
#include <utility>
#include <vector>

namespace prespa {

/// Result of fitting y(t) = offset + amplitude * exp(-t/T).
struct ExpFit {
    double offset = 0.0;
    double amplitude = 0.0;
    double T = 0.0;
    double T_stderr = 0.0;
    double sse = 0.0;
};

/// Variable-projection fit of offset + c*exp(-t/T); when `fixed_offset` is
/// given the offset is pinned and only (c, T) are free. T is located by a
/// log-spaced scan followed by golden-section refinement.
ExpFit fit_exponential(const std::vector<double>& t, const std::vector<double>& y,
                       const double* fixed_offset = nullptr, double t_min = 0.5,
                       double t_max = 50000.0);

/// Ordinary least squares for y = a + b*t; returns {a, b}.
std::pair<double, double> linear_fit(const std::vector<double>& t, const std::vector<double>& y);

/// Golden-section minimizer on [lo, hi] for a unimodal objective.
double golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                       double tol = 1e-10);

}  // namespace prespa
