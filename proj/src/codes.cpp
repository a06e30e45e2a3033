#include "prespa/codes.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "prespa/fit.hpp"

namespace prespa {

LogicalCode binomial_code(int n_cav) {
    if (n_cav < 6) throw std::invalid_argument("binomial code needs n_cav >= 6");
    Vec z = Vec::Zero(n_cav), o = Vec::Zero(n_cav);
    z(1) = z(5) = 1.0 / std::sqrt(2.0);
    o(3) = 1.0;
    const ModeDims dims{n_cav, 1, 1};
    return {StateVector(dims, z), StateVector(dims, o), 3.0, Parity::odd};
}

LogicalCode fock01_code(int n_cav) {
    if (n_cav < 2) throw std::invalid_argument("fock01 code needs n_cav >= 2");
    Vec z = Vec::Zero(n_cav), o = Vec::Zero(n_cav);
    z(0) = 1.0;
    o(1) = 1.0;
    const ModeDims dims{n_cav, 1, 1};
    return {StateVector(dims, z), StateVector(dims, o), 0.5, Parity::even};
}

std::array<StateVector, 6> cardinal_states(const LogicalCode& code) {
    const Vec& z = code.zero_l.amplitudes;
    const Vec& o = code.one_l.amplitudes;
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    return {code.zero_l,
            code.one_l,
            StateVector(code.zero_l.dims, (z + o) * s),
            StateVector(code.zero_l.dims, (z - o) * s),
            StateVector(code.zero_l.dims, (z + i * o) * s),
            StateVector(code.zero_l.dims, (z - i * o) * s)};
}

QuantumOperator generalized_parity(int m, int dim) {
    if (m < 1) throw std::invalid_argument("parity order must be positive");
    Mat p = Mat::Zero(dim, dim);
    for (int n = 0; n < dim; ++n)
        p(n, n) = std::exp(Complex(0.0, kTwoPi * double(n) / double(m)));
    return {ModeDims{dim, 1, 1}, std::move(p)};
}

double state_fidelity(const DensityMatrix& rho, const StateVector& psi) {
    if (!(rho.dims == psi.dims)) throw std::invalid_argument("state dims do not match");
    return psi.amplitudes.dot(rho.matrix * psi.amplitudes).real();
}

double process_fidelity(double f_avg) {
    if (f_avg < 0.0 || f_avg > 1.0) throw std::invalid_argument("average fidelity must be in [0,1]");
    return 0.25 + 1.5 * (f_avg - 0.5);
}

namespace {

// three unit Bloch directions per cardinal-state index (z+, z-, x+, x-, y+, y-)
constexpr double kAxes[6][3] = {{0, 0, 1}, {0, 0, -1}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};

double decoded_fidelity(const Mat& rho, const Vec& z, const Vec& o, int axis) {
    const double p0 = z.dot(rho * z).real();
    const double p1 = o.dot(rho * o).real();
    const Complex c01 = z.dot(rho * o);
    const double x = 2.0 * c01.real();
    const double y = -2.0 * c01.imag();
    const double zz = p0 - p1;
    return 0.5 * (1.0 + kAxes[axis][0] * x + kAxes[axis][1] * y + kAxes[axis][2] * zz);
}

struct CardinalRun {
    std::vector<double> times;
    // fids[axis][k] at times[k]
    std::array<std::vector<double>, 6> fids;
};

CardinalRun evolve_cardinals(const LindbladModel& model, const LogicalCode& code,
                             const TimeGrid& grid, const SolverOptions& opts, bool recovery) {
    if (!(model.dims == code.zero_l.dims))
        throw std::invalid_argument("code and model dimensions do not match");
    const auto states = cardinal_states(code);
    const auto times = grid.times();
    const double dt = times.size() > 1 ? times[1] - times[0] : 0.0;
    const Mat u_dt = (Complex(0.0, -1.0) * model.hamiltonian.matrix * dt).exp();
    const Mat a = annihilation(model.dims.n_cav).matrix;

    CardinalRun run;
    run.times = times;
    std::array<Trajectory, 6> traj;
    for (int sidx = 0; sidx < 6; ++sidx)
        traj[sidx] = evolve(model, DensityMatrix::from_state(states[sidx]), grid, opts);

    Vec z = code.zero_l.amplitudes, o = code.one_l.amplitudes;
    for (size_t k = 0; k < times.size(); ++k) {
        Vec ze = a * z, oe = a * o;
        const double nz = ze.norm(), no = oe.norm();
        if (nz > 1e-12) ze /= nz;
        if (no > 1e-12) oe /= no;
        for (int sidx = 0; sidx < 6; ++sidx) {
            const Mat& rho = traj[sidx].states[k].matrix;
            double f = decoded_fidelity(rho, z, o, sidx);
            if (recovery && nz > 1e-12 && no > 1e-12)
                f += decoded_fidelity(rho, ze, oe, sidx) - 0.5;
            run.fids[sidx].push_back(f);
        }
        z = u_dt * z;
        o = u_dt * o;
    }
    return run;
}

}  // namespace

LifetimeResult logical_lifetime(const LindbladModel& model, const LogicalCode& code,
                                const TimeGrid& grid, const SolverOptions& opts) {
    const CardinalRun run = evolve_cardinals(model, code, grid, opts, false);
    LifetimeResult res;
    res.times = run.times;
    res.pole_curve.resize(run.times.size());
    res.equator_curve.resize(run.times.size());
    for (size_t k = 0; k < run.times.size(); ++k) {
        res.pole_curve[k] = 0.5 * (run.fids[0][k] + run.fids[1][k]);
        res.equator_curve[k] =
            0.25 * (run.fids[2][k] + run.fids[3][k] + run.fids[4][k] + run.fids[5][k]);
    }
    const double span = grid.t_end - grid.t_start;
    const ExpFit pole = fit_exponential(res.times, res.pole_curve, nullptr, span * 1e-3, span * 200.0);
    const double half = 0.5;
    const ExpFit equator =
        fit_exponential(res.times, res.equator_curve, &half, span * 1e-3, span * 200.0);
    for (const ExpFit* f : {&pole, &equator}) {
        if (f->T >= span * 150.0 || f->T <= span * 2e-3)
            throw std::runtime_error("lifetime fit did not converge (T at scan boundary, sse=" +
                                     std::to_string(f->sse) + ")");
    }
    res.fit.T_p = pole.T;
    res.fit.T_p_stderr = pole.T_stderr;
    res.fit.T_eq = equator.T;
    res.fit.T_eq_stderr = equator.T_stderr;
    res.fit.pole_residual = pole.sse;
    res.fit.equator_residual = equator.sse;
    res.fit.tau_process = 1.0 / ((2.0 / 3.0) / equator.T + (1.0 / 3.0) / pole.T);
    return res;
}

UncorrectedDecay uncorrected_lifetime(const LindbladModel& model, const LogicalCode& code,
                                      const TimeGrid& grid, const SolverOptions& opts) {
    const CardinalRun run = evolve_cardinals(model, code, grid, opts, true);
    UncorrectedDecay out;
    out.times = run.times;
    out.process_fidelity_curve.resize(run.times.size());
    for (size_t k = 0; k < run.times.size(); ++k) {
        double favg = 0.0;
        for (int sidx = 0; sidx < 6; ++sidx) favg += run.fids[sidx][k];
        favg /= 6.0;
        out.process_fidelity_curve[k] = 0.25 + 1.5 * (favg - 0.5);
    }
    const double target = std::exp(-1.0);
    for (size_t k = 1; k < out.times.size(); ++k) {
        const double f0 = out.process_fidelity_curve[k - 1];
        const double f1 = out.process_fidelity_curve[k];
        if (f0 > target && f1 <= target) {
            const double w = (f0 - target) / (f0 - f1);
            out.t_1e_us = out.times[k - 1] + w * (out.times[k] - out.times[k - 1]);
            break;
        }
    }
    return out;
}

QuantumOperator decode_map(const ModeDims& dims) {
    if (dims.n_cav < 6 || dims.n_tmon < 2)
        throw std::invalid_argument("decode map needs n_cav >= 6 and at least two transmon levels");
    const int n = dims.total();
    const double s = 1.0 / std::sqrt(2.0);
    Mat domain = Mat::Zero(n, 3), target = Mat::Zero(n, 3);
    domain(dims.index(1, 0, 0), 0) = s;   // u0 = (|1> + |5>)/sqrt2
    domain(dims.index(5, 0, 0), 0) = s;
    domain(dims.index(3, 0, 0), 1) = 1.0;  // v0 = |3>
    domain(dims.index(1, 0, 0), 2) = s;   // u1 = (|1> - |5>)/sqrt2
    domain(dims.index(5, 0, 0), 2) = -s;
    target(dims.index(0, 0, 0), 0) = 1.0;
    target(dims.index(0, 1, 0), 1) = 1.0;
    target(dims.index(1, 0, 0), 2) = 1.0;

    // pair canonical orthonormal completions of both complements
    auto complete = [n](const Mat& basis3) {
        Mat full(n, n);
        full.leftCols(3) = basis3;
        int cols = 3;
        for (int k = 0; k < n && cols < n; ++k) {
            Vec v = Vec::Zero(n);
            v(k) = 1.0;
            for (int c = 0; c < cols; ++c) v -= full.col(c).dot(v) * full.col(c);
            const double nv = v.norm();
            if (nv > 1e-8) full.col(cols++) = v / nv;
        }
        if (cols != n) throw std::runtime_error("failed to complete decode basis");
        return full;
    };
    const Mat d_full = complete(domain);
    const Mat t_full = complete(target);
    return {dims, t_full * d_full.adjoint()};
}

}  // namespace prespa
