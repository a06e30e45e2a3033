#include "prespa/cascade.hpp"

#include <cmath>
#include <thread>

#include <Eigen/Eigenvalues>

namespace prespa {

Eigen::Matrix3cd CascadeMatrix::matrix() const {
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    m(0, 1) = omega1;
    m(1, 0) = std::conj(omega1);
    m(1, 1) = chi_detune;
    m(1, 2) = omega2;
    m(2, 1) = std::conj(omega2);
    m(2, 2) = Complex(0.0, -0.5 * kappa);
    return m;
}

Eigen::Vector3cd cascade_eigenvalues(const CascadeMatrix& m) {
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(m.matrix(), false);
    return es.eigenvalues();
}

EffectiveRate effective_rate_detailed(const CascadeMatrix& m) {
    if (!(m.kappa > 0.0)) throw std::invalid_argument("cascade matrix requires kappa > 0");
    const Eigen::Vector3cd ev = cascade_eigenvalues(m);
    int slow = 0;
    for (int k = 1; k < 3; ++k)
        if (std::abs(ev[k].imag()) < std::abs(ev[slow].imag())) slow = k;
    EffectiveRate out;
    out.rate = 2.0 * std::abs(ev[slow].imag());
    const double scale = m.kappa;
    for (int k = 0; k < 3; ++k)
        if (std::abs(ev[k].real()) > 1e-9 * scale) out.oscillatory = true;
    // coalescence detection is looser than the bifurcation threshold: a
    // defective pair perturbs as sqrt(eps) under roundoff
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(ev[i] - ev[j]) < 1e-6 * scale) out.exceptional = true;
    return out;
}

double effective_rate(const CascadeMatrix& m) { return effective_rate_detailed(m).rate; }

double lambda_critical(double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    return kappa / 4.0;
}

double lambda_critical_numeric(double kappa, double rel_tol) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    auto split = [kappa](double w2) {
        Eigen::Matrix2cd b;
        b << 0.0, w2, w2, Complex(0.0, -0.5 * kappa);
        Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(b, false);
        return std::abs(es.eigenvalues()[0].real() - es.eigenvalues()[1].real());
    };
    double lo = 0.0, hi = kappa;  // below critical: purely imaginary pair, no splitting
    while (hi - lo > rel_tol * kappa) {
        const double mid = 0.5 * (lo + hi);
        if (split(mid) > 1e-12 * kappa) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

RateLandscape sweep_landscape(double omega1_lo, double omega1_hi, double omega2_lo,
                              double omega2_hi, double kappa, int n_grid, int n_jobs,
                              double rel_tol) {
    if (!(omega1_lo > 0.0 && omega1_hi > omega1_lo && omega2_lo > 0.0 && omega2_hi > omega2_lo))
        throw std::invalid_argument("landscape ranges must be positive and increasing");
    if (n_grid < 1) throw std::invalid_argument("n_grid must be at least 1");
    RateLandscape ls;
    ls.omega1_axis.resize(n_grid);
    ls.omega2_axis.resize(n_grid);
    for (int i = 0; i < n_grid; ++i) {
        const double f = n_grid == 1 ? 0.0 : double(i) / (n_grid - 1);
        ls.omega1_axis[i] = omega1_lo + f * (omega1_hi - omega1_lo);
        ls.omega2_axis[i] = omega2_lo + f * (omega2_hi - omega2_lo);
    }
    ls.rates.assign(n_grid, std::vector<double>(n_grid, 0.0));
    ls.bifurcation_mask.assign(n_grid, std::vector<uint8_t>(n_grid, 0));

    auto work = [&](int row_begin, int row_end) {
        for (int i = row_begin; i < row_end; ++i) {
            for (int j = 0; j < n_grid; ++j) {
                CascadeMatrix m{ls.omega1_axis[i], ls.omega2_axis[j], kappa, 0.0};
                const Eigen::Vector3cd ev = cascade_eigenvalues(m);
                double min_im = std::abs(ev[0].imag());
                double max_re = std::abs(ev[0].real());
                for (int k = 1; k < 3; ++k) {
                    min_im = std::min(min_im, std::abs(ev[k].imag()));
                    max_re = std::max(max_re, std::abs(ev[k].real()));
                }
                ls.rates[i][j] = 2.0 * min_im;
                ls.bifurcation_mask[i][j] = max_re > rel_tol * kappa ? 1 : 0;
            }
        }
    };
    const int jobs = std::max(1, n_jobs);
    if (jobs == 1 || n_grid < 4) {
        work(0, n_grid);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (n_grid + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
            const int b = t * chunk, e = std::min(n_grid, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }
    for (int i = 0; i < n_grid; ++i)
        for (int j = 0; j < n_grid; ++j)
            if (!ls.bifurcation_mask[i][j] && ls.rates[i][j] > ls.argmax_non_oscillatory.rate) {
                ls.argmax_non_oscillatory = {ls.rates[i][j], ls.omega1_axis[i], ls.omega2_axis[j]};
            }
    return ls;
}

double detuned_rate(double omega1, double omega2, double kappa, double chi) {
    if (std::abs(chi) > 0.0 && std::abs(chi) < 3.0 * std::abs(omega1))
        std::fprintf(stderr, "warning: detuned_rate expects chi >> omega1\n");
    return effective_rate(CascadeMatrix{omega1, omega2, kappa, chi});
}

double cascade_halftime(const CascadeMatrix& m) {
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(m.matrix(), true);
    const Eigen::Vector3cd ev = es.eigenvalues();
    const Eigen::Matrix3cd v = es.eigenvectors();
    const Eigen::Vector3cd c = v.fullPivLu().solve(Eigen::Vector3cd(1.0, 0.0, 0.0));
    auto norm2 = [&](double t) {
        Eigen::Vector3cd phase;
        for (int k = 0; k < 3; ++k) phase[k] = c[k] * std::exp(Complex(0.0, -1.0) * ev[k] * t);
        return (v * phase).squaredNorm();
    };
    double lo = 0.0, hi = 1.0;
    while (norm2(hi) > 0.5 && hi < 1e7) hi *= 2.0;
    if (hi >= 1e7) return -1.0;  // never converts (e.g. omega1 = 0)
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (norm2(mid) > 0.5) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> nonhermitian_population(const CascadeMatrix& m, double t_end, int n_points) {
    if (n_points < 2 || !(t_end > 0.0)) throw std::invalid_argument("bad sampling request");
    const Eigen::Matrix3cd h = m.matrix();
    const Complex mi(0.0, -1.0);
    Eigen::Vector3cd psi(1.0, 0.0, 0.0);
    std::vector<double> out;
    out.reserve(n_points);
    const double dt_out = t_end / (n_points - 1);
    const int substeps = std::max(1, int(std::ceil(dt_out * (m.kappa + std::abs(m.omega1) +
                                                             std::abs(m.omega2) + std::abs(m.chi_detune)) * 20.0)));
    const double dt = dt_out / substeps;
    out.push_back(std::norm(psi[0]));
    for (int i = 1; i < n_points; ++i) {
        for (int s = 0; s < substeps; ++s) {
            const Eigen::Vector3cd k1 = mi * (h * psi);
            const Eigen::Vector3cd k2 = mi * (h * (psi + 0.5 * dt * k1));
            const Eigen::Vector3cd k3 = mi * (h * (psi + 0.5 * dt * k2));
            const Eigen::Vector3cd k4 = mi * (h * (psi + dt * k3));
            psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        out.push_back(std::norm(psi[0]));
    }
    return out;
}

}  // namespace prespa
