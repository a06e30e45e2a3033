#include "prespa/model.hpp"

#include <algorithm>
#include <cmath>

namespace prespa {

double SystemParams::gamma_phi_gf() const {
    return std::max(0.0, 1.0 / T2gf_us - 0.5 / T1ef_us);
}

double SystemParams::gamma_phi_cavity() const {
    return std::max(0.0, 1.0 / T2a_us - 0.5 / T1a_us);
}

void SystemParams::validate() const {
    auto positive = {omega_q_mhz, omega_a_mhz, omega_r_mhz, alpha_q_mhz, chi_ge_mhz,
                     chi_ef_mhz,  chi_qr_mhz,  kerr_khz,    kappa_r_mhz, T1a_us,
                     T2a_us,      T1ge_us,     T1ef_us,     T2R_us,      T2E_us,
                     T2gf_us};
    for (double v : positive)
        if (!(v > 0.0)) throw std::invalid_argument("system parameters must be strictly positive");
    if (1.0 / T2R_us - 0.5 / T1ge_us < 0.0)
        throw std::invalid_argument("T2R exceeds the 2*T1ge limit");
    if (p_e_thermal < 0.0 || p_e_thermal > 1.0 || p1_thermal < 0.0 || p1_thermal > 1.0)
        throw std::invalid_argument("thermal populations must lie in [0,1]");
}

void DriveConfig::validate(const ModeDims& dims) const {
    if (omega1_khz < 0.0 || omega2_khz < 0.0)
        throw std::invalid_argument("drive rates must be non-negative");
    if (photon_targets.empty()) throw std::invalid_argument("photon_targets must be non-empty");
    for (int n : photon_targets) {
        if (n < 1 || n > dims.n_cav - 1)
            throw std::invalid_argument("photon target exceeds the cavity truncation");
    }
}

QuantumOperator build_static_hamiltonian(const SystemParams& params, const ModeDims& dims,
                                         bool include_chi_q_prime) {
    params.validate();
    dims.validate();
    const Mat n_cav = number_operator(dims.n_cav).matrix;
    const Mat n_res = number_operator(dims.n_res).matrix;
    Mat kerr2 = Mat::Zero(dims.n_cav, dims.n_cav);  // a^dag^2 a^2 = n(n-1)
    for (int k = 0; k < dims.n_cav; ++k) kerr2(k, k) = double(k) * double(k - 1);
    Mat anh = Mat::Zero(dims.n_tmon, dims.n_tmon);  // q^dag^2 q^2 on the level basis
    for (int k = 0; k < dims.n_tmon; ++k) anh(k, k) = double(k) * double(k - 1);

    Mat h = Mat::Zero(dims.total(), dims.total());
    h += kronecker(Mat::Identity(dims.n_cav, dims.n_cav),
                   kronecker(-kTwoPi * params.alpha_q_mhz / 2.0 * anh,
                             Mat::Identity(dims.n_res, dims.n_res)));
    if (dims.n_tmon > 1) {
        const Mat pe = projector(1, dims.n_tmon).matrix;
        h += kronecker(-kTwoPi * params.chi_ge_mhz * n_cav,
                       kronecker(pe, Mat::Identity(dims.n_res, dims.n_res)));
        h += kronecker(Mat::Identity(dims.n_cav, dims.n_cav),
                       kronecker(-kTwoPi * params.chi_qr_mhz * pe, n_res));
    }
    if (dims.n_tmon > 2) {
        const Mat pf = projector(2, dims.n_tmon).matrix;
        h += kronecker(-kTwoPi * params.chi_gf_mhz() * n_cav,
                       kronecker(pf, Mat::Identity(dims.n_res, dims.n_res)));
    }
    h += kronecker(-kTwoPi * (params.kerr_khz * 1e-3) / 2.0 * kerr2,
                   kronecker(Mat::Identity(dims.n_tmon, dims.n_tmon),
                             Mat::Identity(dims.n_res, dims.n_res)));
    if (include_chi_q_prime) {
        const Mat n_t = number_operator(dims.n_tmon).matrix;
        h += kronecker(kTwoPi * (params.chi_q_prime_khz * 1e-3) / 2.0 * kerr2,
                       kronecker(n_t, Mat::Identity(dims.n_res, dims.n_res)));
    }
    return {dims, std::move(h)};
}

QuantumOperator build_drive_hamiltonian(const DriveConfig& cfg, const ModeDims& dims) {
    dims.validate();
    cfg.validate(dims);
    if (dims.n_tmon < 3 || dims.n_res < 2)
        throw std::invalid_argument("drive Hamiltonian needs 3 transmon levels and 2 reservoir levels");
    const double w1 = kTwoPi * cfg.omega1_khz * 1e-3;  // rad/us
    const double w2 = kTwoPi * cfg.omega2_khz * 1e-3;
    const double det = kTwoPi * cfg.detuning_khz * 1e-3;
    Mat h = Mat::Zero(dims.total(), dims.total());
    for (int n : cfg.photon_targets) {
        h(dims.index(n, 2, 0), dims.index(n - 1, 0, 0)) += w1;
        h(dims.index(n, 0, 1), dims.index(n, 2, 0)) += w2;
        h(dims.index(n, 2, 0), dims.index(n, 2, 0)) += det;
    }
    Mat full = h + h.adjoint();
    full.diagonal() -= h.diagonal();  // diagonal entries were added twice
    return {dims, std::move(full)};
}

QuantumOperator build_drive_hamiltonian_with_leakage(const DriveConfig& cfg,
                                                     const SystemParams& params,
                                                     const ModeDims& dims) {
    QuantumOperator base = build_drive_hamiltonian(cfg, dims);
    const double w1 = kTwoPi * cfg.omega1_khz * 1e-3;
    const double w2 = kTwoPi * cfg.omega2_khz * 1e-3;
    Mat h = Mat::Zero(dims.total(), dims.total());
    for (int m = 1; m < dims.n_cav; ++m) {
        if (std::find(cfg.photon_targets.begin(), cfg.photon_targets.end(), m) !=
            cfg.photon_targets.end())
            continue;
        // nearest comb tone; ties resolved toward the lower target
        int n0 = cfg.photon_targets.front();
        for (int t : cfg.photon_targets)
            if (std::abs(m - t) < std::abs(m - n0)) n0 = t;
        const double detune = kTwoPi * (m - n0) * params.chi_gf_mhz();  // rad/us
        const double bosonic = std::sqrt(double(m) / double(n0));
        h(dims.index(m, 2, 0), dims.index(m - 1, 0, 0)) += w1 * bosonic;
        h(dims.index(m, 0, 1), dims.index(m, 2, 0)) += w2;
        h(dims.index(m, 2, 0), dims.index(m, 2, 0)) += detune;
    }
    Mat full = h + h.adjoint();
    full.diagonal() -= h.diagonal();
    full += base.matrix;
    return {dims, std::move(full)};
}

std::vector<QuantumOperator> build_collapse_ops(const SystemParams& params, const ModeDims& dims,
                                                const CollapseOptions& opts) {
    params.validate();
    dims.validate();
    std::vector<QuantumOperator> ops;
    if (opts.cavity_loss && std::isfinite(params.T1a_us)) {
        QuantumOperator a = embed(annihilation(dims.n_cav), 0, dims);
        a.matrix *= std::sqrt(1.0 / params.T1a_us);
        ops.push_back(std::move(a));
    }
    if (opts.transmon_decay && dims.n_tmon > 1 && std::isfinite(params.T1ge_us)) {
        QuantumOperator ge = embed(transition(0, 1, dims.n_tmon), 1, dims);
        ge.matrix *= std::sqrt(1.0 / params.T1ge_us);
        ops.push_back(std::move(ge));
        if (dims.n_tmon > 2 && std::isfinite(params.T1ef_us)) {
            QuantumOperator ef = embed(transition(1, 2, dims.n_tmon), 1, dims);
            ef.matrix *= std::sqrt(1.0 / params.T1ef_us);
            ops.push_back(std::move(ef));
        }
    }
    if (opts.reservoir_decay && dims.n_res > 1) {
        QuantumOperator r = embed(annihilation(dims.n_res), 2, dims);
        r.matrix *= std::sqrt(kTwoPi * params.kappa_r_mhz);
        ops.push_back(std::move(r));
    }
    if (opts.transmon_dephasing && dims.n_tmon > 1) {
        const double gphi = params.gamma_phi();
        if (gphi > 0.0) {
            QuantumOperator qq = embed(number_operator(dims.n_tmon), 1, dims);
            qq.matrix *= std::sqrt(2.0 * gphi);
            ops.push_back(std::move(qq));
        }
    }
    if (opts.gf_dephasing && dims.n_tmon > 2) {
        const double g = params.gamma_phi_gf();
        if (g > 0.0) {
            QuantumOperator pf = embed(projector(2, dims.n_tmon), 1, dims);
            pf.matrix *= std::sqrt(2.0 * g);
            ops.push_back(std::move(pf));
        }
    }
    if (opts.gamma_up_per_us > 0.0 && dims.n_tmon > 1) {
        QuantumOperator up = embed(transition(1, 0, dims.n_tmon), 1, dims);
        up.matrix *= std::sqrt(opts.gamma_up_per_us);
        ops.push_back(std::move(up));
    }
    return ops;
}

LindbladModel build_full_model(const SystemParams& params, const DriveConfig& cfg,
                               const ModeDims& dims, const CollapseOptions& opts) {
    return {build_drive_hamiltonian(cfg, dims), build_collapse_ops(params, dims, opts), dims};
}

QuantumOperator correction_operator(double kappa_cor, int dim) {
    if (kappa_cor <= 0.0) throw std::invalid_argument("kappa_cor must be positive");
    Mat m = Mat::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; n += 2) m(n + 1, n) = std::sqrt(kappa_cor);
    return {ModeDims{dim, 1, 1}, std::move(m)};
}

LindbladModel build_effective_model(double kappa_cor, const SystemParams& params, int n_cav,
                                    bool include_cavity_dephasing) {
    params.validate();
    const ModeDims dims{n_cav, 1, 1};
    Mat h = Mat::Zero(n_cav, n_cav);
    for (int k = 0; k < n_cav; ++k)
        h(k, k) = -kTwoPi * (params.kerr_khz * 1e-3) / 2.0 * double(k) * double(k - 1);
    std::vector<QuantumOperator> ops;
    QuantumOperator a = annihilation(n_cav);
    a.matrix *= std::sqrt(1.0 / params.T1a_us);
    ops.push_back(std::move(a));
    if (kappa_cor > 0.0) ops.push_back(correction_operator(kappa_cor, n_cav));
    if (include_cavity_dephasing) {
        const double g = params.gamma_phi_cavity();
        if (g > 0.0) {
            QuantumOperator nn = number_operator(n_cav);
            nn.matrix *= std::sqrt(2.0 * g);
            ops.push_back(std::move(nn));
        }
    }
    return {QuantumOperator{dims, std::move(h)}, std::move(ops), dims};
}

}  // namespace prespa
