#pragma once

// Lindblad master-equation integration on the vectorized (column-stacked)
// density matrix. The Liouvillian is assembled once per model as a sparse
// matrix; time stepping is an adaptive Dormand-Prince 5(4) scheme.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "prespa/model.hpp"

namespace prespa {

using SparseMat = Eigen::SparseMatrix<Complex>;

struct TimeGrid {
    double t_start = 0.0;
    double t_end;
    int n_points;

    TimeGrid() = default;
    TimeGrid(double t0, double t1, int n) : t_start(t0), t_end(t1), n_points(n) { validate(); }
    void validate() const;
    std::vector<double> times() const;
};

struct SolverOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    long max_steps = 50'000'000;
};

/// Raised when the adaptive step size underflows; carries the time reached.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double t) : std::runtime_error(what), t_reached(t) {}
    double t_reached;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;   // empty in storage-lean runs
    /// max |tr rho(t) - 1| over the recorded points (no renormalization applied)
    double max_trace_drift = 0.0;
};

/// Column-stacked Liouvillian of dim total^2.
SparseMat build_liouvillian(const LindbladModel& model);

Trajectory evolve(const LindbladModel& model, const DensityMatrix& rho0, const TimeGrid& grid,
                  const SolverOptions& opts = {});

/// Storage-lean evolution: records real expectation values of the given
/// (Hermitian) operators at every grid time instead of full states.
struct ObservableRecord {
    std::vector<double> times;
    std::vector<std::string> names;
    std::vector<std::vector<double>> values;  // values[k] is the series for names[k]
    double max_trace_drift = 0.0;
};
ObservableRecord evolve_observables(const LindbladModel& model, const DensityMatrix& rho0,
                                    const TimeGrid& grid,
                                    const std::vector<std::string>& names,
                                    const std::vector<QuantumOperator>& ops,
                                    const SolverOptions& opts = {});

Complex expectation(const DensityMatrix& rho, const QuantumOperator& op);

/// Even-to-odd conversion under the resonant drive comb: records the
/// conservative converted population P(n+1,g) - P(n+1,e) together with the
/// transmon populations, and the first time the converted population crosses 1/2.
struct ConversionCurve {
    std::vector<double> times;
    std::vector<double> converted;   // P(n+1,g) - P(n+1,e)
    std::vector<double> p_target_g;  // P(n+1,g)
    std::vector<double> p_e;
    std::vector<double> p_f;
    double halftime_us = -1.0;       // negative when the curve never crosses 1/2
};
ConversionCurve conversion_curve(const SystemParams& params, const DriveConfig& cfg,
                                 int initial_even_fock, const TimeGrid& grid,
                                 const ModeDims& dims = {}, const SolverOptions& opts = {});

}  // namespace prespa
