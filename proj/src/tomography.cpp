#include "prespa/tomography.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace prespa {

double WignerMap::grid_integral() const {
    if (re_axis.size() < 2 || im_axis.size() < 2) return 0.0;
    const double da = (re_axis[1] - re_axis[0]) * (im_axis[1] - im_axis[0]);
    double s = 0.0;
    for (const auto& row : values)
        for (double v : row) s += v;
    return s * da;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int keep) {
    const ModeDims& d = rho.dims;
    const int dk = d.dim_of_mode(keep);
    Mat out = Mat::Zero(dk, dk);
    for (int c = 0; c < d.n_cav; ++c)
        for (int t = 0; t < d.n_tmon; ++t)
            for (int r = 0; r < d.n_res; ++r)
                for (int c2 = 0; c2 < d.n_cav; ++c2)
                    for (int t2 = 0; t2 < d.n_tmon; ++t2)
                        for (int r2 = 0; r2 < d.n_res; ++r2) {
                            // keep the chosen mode's indices, require the others equal
                            const int i = keep == 0 ? c : keep == 1 ? t : r;
                            const int j = keep == 0 ? c2 : keep == 1 ? t2 : r2;
                            const bool diag = (keep == 0 || (c == c2)) &&
                                              (keep == 1 || (t == t2)) &&
                                              (keep == 2 || (r == r2));
                            if (diag)
                                out(i, j) += rho.matrix(d.index(c, t, r), d.index(c2, t2, r2));
                        }
    return DensityMatrix(ModeDims{dk, 1, 1}, std::move(out), 1e-7, 1e-6);
}

namespace {

/// Fast displaced-parity evaluator: D(alpha) = R(theta) V e^{-i|a|L} V^dag R(theta)^dag
/// with i(a^dag - a) = V L V^dag Hermitian and R(theta) = e^{i theta n}.
class DisplacedParity {
public:
    explicit DisplacedParity(int dim) : dim_(dim) {
        const Mat a = annihilation(dim).matrix;
        const Mat gen = Complex(0.0, 1.0) * (a.adjoint() - a);  // hermitian
        Eigen::SelfAdjointEigenSolver<Mat> es(gen);
        v_ = es.eigenvectors();
        lam_ = es.eigenvalues();
        parity_ = Vec(dim);
        for (int n = 0; n < dim; ++n) parity_(n) = (n % 2 == 0) ? 1.0 : -1.0;
    }

    Mat displacement(Complex alpha) const {
        const double r = std::abs(alpha);
        const double theta = std::arg(alpha);
        Vec phase(dim_);
        for (int k = 0; k < dim_; ++k)
            phase(k) = std::exp(Complex(0.0, -r * lam_(k)));
        Mat d = v_ * phase.asDiagonal() * v_.adjoint();
        Vec rot(dim_);
        for (int n = 0; n < dim_; ++n) rot(n) = std::exp(Complex(0.0, theta * n));
        return rot.asDiagonal() * d * rot.conjugate().asDiagonal();
    }

    double value(const Mat& rho, Complex alpha) const {
        const Mat d = displacement(alpha);
        // tr[D P D^dag rho] with diagonal parity
        const Mat m = d.adjoint() * rho * d;
        Complex tr = 0.0;
        for (int n = 0; n < dim_; ++n) tr += parity_(n) * m(n, n);
        return 2.0 / M_PI * tr.real();
    }

private:
    int dim_;
    Mat v_;
    Eigen::VectorXd lam_;
    Vec parity_;
};

}  // namespace

WignerMap wigner(const DensityMatrix& rho_cav, double half_extent, int n_side) {
    if (!(rho_cav.dims.n_tmon == 1 && rho_cav.dims.n_res == 1))
        throw std::invalid_argument("wigner expects a single-mode density matrix");
    if (n_side < 2 || !(half_extent > 0.0)) throw std::invalid_argument("bad wigner grid");
    const int dim = rho_cav.dims.n_cav;

    WignerMap map;
    // support estimate: highest Fock level holding more than 1e-9 population
    int n_max = 0;
    for (int n = 0; n < dim; ++n)
        if (rho_cav.matrix(n, n).real() > 1e-9) n_max = n;
    const double reach = std::pow(half_extent + std::sqrt(double(n_max) + 1.0), 2.0);
    map.truncation_warning = double(dim) < reach;

    map.re_axis.resize(n_side);
    map.im_axis.resize(n_side);
    for (int i = 0; i < n_side; ++i) {
        const double x = -half_extent + 2.0 * half_extent * i / (n_side - 1);
        map.re_axis[i] = x;
        map.im_axis[i] = x;
    }
    const DisplacedParity dp(dim);
    map.values.assign(n_side, std::vector<double>(n_side, 0.0));
    for (int i = 0; i < n_side; ++i)
        for (int j = 0; j < n_side; ++j)
            map.values[i][j] = dp.value(rho_cav.matrix, Complex(map.re_axis[i], map.im_axis[j]));
    return map;
}

double coherence_factor(const DensityMatrix& rho_before, const DensityMatrix& rho_after,
                        std::pair<int, int> fock_pair_before) {
    const auto [i, j] = fock_pair_before;
    if (i < 0 || j < 0 || i >= rho_before.dims.n_cav || j >= rho_before.dims.n_cav ||
        i + 1 >= rho_after.dims.n_cav || j + 1 >= rho_after.dims.n_cav)
        throw std::invalid_argument("fock pair out of range");
    const double denom = std::abs(rho_before.matrix(i, j));
    if (denom < 1e-9)
        throw std::invalid_argument("reference coherence below 1e-9; factor undefined");
    return std::abs(rho_after.matrix(i + 1, j + 1)) / denom;
}

}  // namespace prespa
