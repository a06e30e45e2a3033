#include "prespa/hilbert.hpp"

#include <cmath>
#include <iostream>

#include <unsupported/Eigen/MatrixFunctions>

namespace prespa {

int ModeDims::dim_of_mode(int mode) const {
    switch (mode) {
        case 0: return n_cav;
        case 1: return n_tmon;
        case 2: return n_res;
        default: throw std::invalid_argument("mode index must be 0, 1 or 2");
    }
}

int ModeDims::index(int cav, int tmon, int res) const {
    return (cav * n_tmon + tmon) * n_res + res;
}

void ModeDims::validate() const {
    if (n_cav < 2 || n_tmon < 1 || n_res < 1)
        throw std::invalid_argument("mode dimensions too small");
}

QuantumOperator::QuantumOperator(ModeDims d, Mat m) : dims(d), matrix(std::move(m)) {
    if (matrix.rows() != matrix.cols() || matrix.rows() != dims.total())
        throw std::invalid_argument("operator side length must equal product of mode dimensions");
}

bool QuantumOperator::is_hermitian(double tol) const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() < tol;
}

StateVector::StateVector(ModeDims d, Vec v) : dims(d), amplitudes(std::move(v)) {
    if (amplitudes.size() != dims.total())
        throw std::invalid_argument("state length must equal product of mode dimensions");
    const double n = amplitudes.norm();
    if (n < 1e-12) throw std::invalid_argument("cannot normalize a zero state");
    amplitudes /= n;
}

DensityMatrix::DensityMatrix(ModeDims d, Mat m, double herm_tol, double trace_tol)
    : dims(d), matrix(std::move(m)) {
    if (matrix.rows() != matrix.cols() || matrix.rows() != dims.total())
        throw std::invalid_argument("density matrix side length must equal product of mode dimensions");
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
        throw std::invalid_argument("density matrix is not hermitian");
    if (std::abs(matrix.trace().real() - 1.0) > trace_tol || std::abs(matrix.trace().imag()) > trace_tol)
        throw std::invalid_argument("density matrix trace differs from 1");
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
    return DensityMatrix(psi.dims, psi.projector());
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Mat> es((matrix + matrix.adjoint()) / 2.0);
    return es.eigenvalues().minCoeff();
}

QuantumOperator annihilation(int dim) {
    if (dim < 2) throw std::invalid_argument("annihilation operator needs dim >= 2");
    Mat a = Mat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return {ModeDims{dim, 1, 1}, std::move(a)};
}

QuantumOperator number_operator(int dim) {
    Mat n = Mat::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = double(k);
    return {ModeDims{dim, 1, 1}, std::move(n)};
}

QuantumOperator identity_op(int dim) {
    return {ModeDims{dim, 1, 1}, Mat::Identity(dim, dim)};
}

QuantumOperator transition(int i, int j, int dim) {
    if (i < 0 || j < 0 || i >= dim || j >= dim)
        throw std::invalid_argument("transition indices out of range");
    Mat m = Mat::Zero(dim, dim);
    m(i, j) = 1.0;
    return {ModeDims{dim, 1, 1}, std::move(m)};
}

QuantumOperator projector(int level, int dim) { return transition(level, level, dim); }

QuantumOperator displacement(Complex alpha, int dim) {
    if (dim < 2) throw std::invalid_argument("displacement needs dim >= 2");
    if (std::norm(alpha) > dim / 4.0)
        std::cerr << "warning: displacement |alpha|^2 = " << std::norm(alpha)
                  << " is large for truncation " << dim << "\n";
    const Mat a = annihilation(dim).matrix;
    Mat gen = alpha * a.adjoint() - std::conj(alpha) * a;
    return {ModeDims{dim, 1, 1}, gen.exp()};
}

Mat kronecker(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

QuantumOperator embed(const QuantumOperator& op, int mode_index, const ModeDims& dims) {
    dims.validate();
    const int d = dims.dim_of_mode(mode_index);
    if (op.matrix.rows() != d)
        throw std::invalid_argument("embedded operator dimension does not match the target mode");
    const Mat ic = Mat::Identity(dims.n_cav, dims.n_cav);
    const Mat it = Mat::Identity(dims.n_tmon, dims.n_tmon);
    const Mat ir = Mat::Identity(dims.n_res, dims.n_res);
    Mat full;
    switch (mode_index) {
        case 0: full = kronecker(op.matrix, kronecker(it, ir)); break;
        case 1: full = kronecker(ic, kronecker(op.matrix, ir)); break;
        case 2: full = kronecker(ic, kronecker(it, op.matrix)); break;
        default: throw std::invalid_argument("mode index must be 0, 1 or 2");
    }
    return {dims, std::move(full)};
}

StateVector fock_state(int cav, int tmon, int res, const ModeDims& dims) {
    if (cav < 0 || cav >= dims.n_cav || tmon < 0 || tmon >= dims.n_tmon || res < 0 || res >= dims.n_res)
        throw std::invalid_argument("fock occupation out of range");
    Vec v = Vec::Zero(dims.total());
    v(dims.index(cav, tmon, res)) = 1.0;
    return {dims, std::move(v)};
}

StateVector fock_state(int n, int dim) {
    if (n < 0 || n >= dim) throw std::invalid_argument("fock occupation out of range");
    Vec v = Vec::Zero(dim);
    v(n) = 1.0;
    return {ModeDims{dim, 1, 1}, std::move(v)};
}

}  // namespace prespa
