#pragma once

// Truncated Fock-space linear algebra for the cavity-transmon-reservoir system.
//
// Tensor ordering convention (fixed throughout the codebase): cavity is the
// slowest index, then transmon, then reservoir. A basis state |n_cav, n_tmon,
// n_res> sits at flat index (n_cav * n_tmon_dim + n_tmon) * n_res_dim + n_res,
// and a three-mode operator is kron(cavity_op, kron(transmon_op, reservoir_op)).

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace prespa {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Fock truncations of the three modes. Transmon levels are g,e,f by default.
struct ModeDims {
    int n_cav = 10;
    int n_tmon = 3;
    int n_res = 2;

    int total() const { return n_cav * n_tmon * n_res; }
    int dim_of_mode(int mode) const;
    /// Flat index of |n_cav, n_tmon, n_res> under the fixed ordering.
    int index(int cav, int tmon, int res) const;
    void validate() const;
    bool operator==(const ModeDims&) const = default;
};

/// Square operator on the full (or a single-mode) Hilbert space.
struct QuantumOperator {
    ModeDims dims;
    Mat matrix;

    QuantumOperator() = default;
    QuantumOperator(ModeDims d, Mat m);

    bool is_hermitian(double tol = 1e-9) const;
    QuantumOperator dagger() const { return {dims, matrix.adjoint()}; }
};

/// Normalized pure state; the constructor rescales to unit norm.
struct StateVector {
    ModeDims dims;
    Vec amplitudes;

    StateVector() = default;
    StateVector(ModeDims d, Vec v);

    Mat projector() const { return amplitudes * amplitudes.adjoint(); }
};

/// Density matrix; construction enforces hermiticity and unit trace.
struct DensityMatrix {
    ModeDims dims;
    Mat matrix;

    DensityMatrix() = default;
    /// `trace_tol` admits the small trace drift of integrated trajectories.
    DensityMatrix(ModeDims d, Mat m, double herm_tol = 1e-8, double trace_tol = 1e-6);

    static DensityMatrix from_state(const StateVector& psi);
    double min_eigenvalue() const;
};

// single-mode operator factories (dims of the returned operator are (d,1,1))
QuantumOperator annihilation(int dim);
QuantumOperator number_operator(int dim);
QuantumOperator identity_op(int dim);
/// |i><j| on a d-level mode.
QuantumOperator transition(int i, int j, int dim);
QuantumOperator projector(int level, int dim);
/// exp(alpha a^dag - conj(alpha) a) via scaling-and-squaring matrix exponential.
QuantumOperator displacement(Complex alpha, int dim);

/// Place a single-mode operator at `mode_index` (0 cavity, 1 transmon, 2 reservoir)
/// with identity on the other modes.
QuantumOperator embed(const QuantumOperator& op, int mode_index, const ModeDims& dims);

/// Basis state |n_cav, n_tmon, n_res>.
StateVector fock_state(int cav, int tmon, int res, const ModeDims& dims);
/// Single-mode basis state |n>.
StateVector fock_state(int n, int dim);

Mat kronecker(const Mat& a, const Mat& b);

}  // namespace prespa
