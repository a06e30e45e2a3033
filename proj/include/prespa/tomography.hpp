#pragma once

// Partial trace, Wigner maps via displaced parity, and the
// coherence-preservation factor for before/after comparisons.

#include <vector>

#include "prespa/hilbert.hpp"

namespace prespa {

struct WignerMap {
    std::vector<double> re_axis;
    std::vector<double> im_axis;
    std::vector<std::vector<double>> values;  // values[i][j] = W(re_axis[i] + i*im_axis[j])
    bool truncation_warning = false;

    /// Riemann sum W * dA over the grid; 1 for a well-resolved normalized state.
    double grid_integral() const;
};

/// Trace out all modes except `keep` (0 cavity, 1 transmon, 2 reservoir).
DensityMatrix partial_trace(const DensityMatrix& rho, int keep);

/// W(alpha) = (2/pi) tr[D(alpha) P D(-alpha) rho] on a square grid
/// |Re alpha|, |Im alpha| <= half_extent with n_side points per axis.
/// The displacements reach Fock levels around (|alpha| + sqrt(n))^2, so the
/// truncation must exceed the grid reach for quantitative tails; a warning
/// flag is set otherwise.
WignerMap wigner(const DensityMatrix& rho_cav, double half_extent = 3.2, int n_side = 81);

/// |<i+1| rho_after |j+1>| / |<i| rho_before |j>|.
double coherence_factor(const DensityMatrix& rho_before, const DensityMatrix& rho_after,
                        std::pair<int, int> fock_pair_before);

}  // namespace prespa
