#include "prespa/solver.hpp"

#include <cmath>

namespace prespa {

void TimeGrid::validate() const {
    if (!(t_end > t_start)) throw std::invalid_argument("time grid requires t_end > t_start");
    if (n_points < 2) throw std::invalid_argument("time grid requires at least two points");
}

std::vector<double> TimeGrid::times() const {
    std::vector<double> out(n_points);
    const double dt = (t_end - t_start) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) out[i] = t_start + i * dt;
    out.back() = t_end;
    return out;
}

namespace {

void kron_accumulate(std::vector<Eigen::Triplet<Complex>>& trip, const Mat& a, const Mat& b,
                     Complex scale) {
    const int br = int(b.rows()), bc = int(b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j) * scale;
            if (std::abs(aij) < 1e-300) continue;
            for (int k = 0; k < br; ++k)
                for (int l = 0; l < bc; ++l) {
                    const Complex v = aij * b(k, l);
                    if (std::abs(v) > 1e-300)
                        trip.emplace_back(i * br + k, j * bc + l, v);
                }
        }
}

}  // namespace

SparseMat build_liouvillian(const LindbladModel& model) {
    const int d = model.dims.total();
    const Mat& h = model.hamiltonian.matrix;
    if (!model.hamiltonian.is_hermitian(1e-9))
        throw std::invalid_argument("model Hamiltonian is not hermitian");
    const Mat id = Mat::Identity(d, d);
    std::vector<Eigen::Triplet<Complex>> trip;
    const Complex mi(0.0, -1.0);
    kron_accumulate(trip, id, h, mi);                    // -i (I (x) H)
    kron_accumulate(trip, h.transpose(), id, -mi);       // +i (H^T (x) I)
    for (const auto& cop : model.collapse_ops) {
        const Mat& c = cop.matrix;
        const Mat cdc = c.adjoint() * c;
        kron_accumulate(trip, c.conjugate(), c, 1.0);
        kron_accumulate(trip, id, cdc, -0.5);
        kron_accumulate(trip, cdc.transpose(), id, -0.5);
    }
    SparseMat L(d * d, d * d);
    L.setFromTriplets(trip.begin(), trip.end());
    L.makeCompressed();
    return L;
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

class Dopri5 {
public:
    Dopri5(const SparseMat& L, const SolverOptions& opts) : L_(L), opts_(opts) {}

    /// Advance y from t to t_target; throws IntegrationError on step underflow.
    void integrate_to(Vec& y, double& t, double t_target) {
        const double span = std::abs(t_target - t);
        if (span <= 0.0) return;
        if (dt_ <= 0.0) dt_ = span / 100.0;
        while (t < t_target) {
            double dt = std::min(dt_, t_target - t);
            if (!(dt > span * 1e-14))
                throw IntegrationError("step size underflow in master-equation integration", t);
            if (++steps_ > opts_.max_steps)
                throw IntegrationError("step budget exhausted in master-equation integration", t);
            const Vec k1 = f_.size() ? f_ : (f_ = L_ * y);
            Vec k2 = L_ * (y + dt * (kA21 * k1)).eval();
            Vec k3 = L_ * (y + dt * (kA31 * k1 + kA32 * k2)).eval();
            Vec k4 = L_ * (y + dt * (kA41 * k1 + kA42 * k2 + kA43 * k3)).eval();
            Vec k5 = L_ * (y + dt * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4)).eval();
            Vec k6 = L_ * (y + dt * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5)).eval();
            Vec y_new = y + dt * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
            Vec k7 = L_ * y_new;
            Vec err_v = dt * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
            double err = 0.0;
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                const double sc =
                    opts_.abs_tol + opts_.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
                const double e = std::abs(err_v[i]) / sc;
                err += e * e;
            }
            err = std::sqrt(err / double(y.size()));
            if (err <= 1.0) {
                t += dt;
                y.swap(y_new);
                f_ = k7;  // FSAL
                const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
                dt_ = dt * std::min(5.0, std::max(0.2, grow));
            } else {
                dt_ = dt * std::max(0.2, 0.9 * std::pow(err, -0.2));
                if (!(dt_ > span * 1e-14))
                    throw IntegrationError("tolerance failure in master-equation integration", t);
            }
        }
    }

private:
    const SparseMat& L_;
    SolverOptions opts_;
    double dt_ = -1.0;
    long steps_ = 0;
    Vec f_;  // first-same-as-last cache, invalidated by swap assignment above
};

double trace_of_vec(const Vec& y, int d) {
    Complex tr = 0.0;
    for (int i = 0; i < d; ++i) tr += y[i * d + i];
    return std::abs(tr - Complex(1.0, 0.0));
}

}  // namespace

Trajectory evolve(const LindbladModel& model, const DensityMatrix& rho0, const TimeGrid& grid,
                  const SolverOptions& opts) {
    grid.validate();
    if (!(rho0.dims == model.dims)) throw std::invalid_argument("state dims do not match the model");
    const int d = model.dims.total();
    const SparseMat L = build_liouvillian(model);
    Dopri5 stepper(L, opts);
    Vec y = Eigen::Map<const Vec>(rho0.matrix.data(), d * d);
    double t = grid.t_start;
    Trajectory out;
    for (double tk : grid.times()) {
        stepper.integrate_to(y, t, tk);
        out.times.push_back(tk);
        out.max_trace_drift = std::max(out.max_trace_drift, trace_of_vec(y, d));
        Mat rho = Eigen::Map<const Mat>(y.data(), d, d);
        rho = (rho + rho.adjoint().eval()) / 2.0;  // scrub roundoff asymmetry only
        out.states.emplace_back(model.dims, std::move(rho), 1e-7, 1e-6);
    }
    return out;
}

ObservableRecord evolve_observables(const LindbladModel& model, const DensityMatrix& rho0,
                                    const TimeGrid& grid, const std::vector<std::string>& names,
                                    const std::vector<QuantumOperator>& ops,
                                    const SolverOptions& opts) {
    grid.validate();
    if (names.size() != ops.size()) throw std::invalid_argument("one name per observable");
    const int d = model.dims.total();
    const SparseMat L = build_liouvillian(model);
    Dopri5 stepper(L, opts);
    Vec y = Eigen::Map<const Vec>(rho0.matrix.data(), d * d);
    double t = grid.t_start;
    ObservableRecord rec;
    rec.names = names;
    rec.values.resize(ops.size());
    for (double tk : grid.times()) {
        stepper.integrate_to(y, t, tk);
        rec.times.push_back(tk);
        rec.max_trace_drift = std::max(rec.max_trace_drift, trace_of_vec(y, d));
        Eigen::Map<const Mat> rho(y.data(), d, d);
        for (size_t k = 0; k < ops.size(); ++k)
            rec.values[k].push_back((ops[k].matrix.cwiseProduct(rho.transpose())).sum().real());
    }
    return rec;
}

Complex expectation(const DensityMatrix& rho, const QuantumOperator& op) {
    if (!(rho.dims == op.dims)) throw std::invalid_argument("operator dims do not match the state");
    const Complex val = (op.matrix * rho.matrix).trace();
    if (op.is_hermitian() && std::abs(val.imag()) > 1e-9)
        throw std::runtime_error("hermitian expectation acquired an imaginary part");
    return val;
}

ConversionCurve conversion_curve(const SystemParams& params, const DriveConfig& cfg,
                                 int initial_even_fock, const TimeGrid& grid,
                                 const ModeDims& dims, const SolverOptions& opts) {
    if (initial_even_fock < 0 || initial_even_fock % 2 != 0)
        throw std::invalid_argument("initial state must be an even Fock number");
    if (initial_even_fock + 1 >= dims.n_cav)
        throw std::invalid_argument("conversion target exceeds the cavity truncation");
    LindbladModel model = build_full_model(params, cfg, dims);
    const int n = initial_even_fock + 1;
    const Mat ir = Mat::Identity(dims.n_res, dims.n_res);
    QuantumOperator png{dims, kronecker(projector(n, dims.n_cav).matrix,
                                        kronecker(projector(0, dims.n_tmon).matrix, ir))};
    QuantumOperator pne{dims, kronecker(projector(n, dims.n_cav).matrix,
                                        kronecker(projector(1, dims.n_tmon).matrix, ir))};
    const QuantumOperator pe = embed(projector(1, dims.n_tmon), 1, dims);
    const QuantumOperator pf = embed(projector(2, dims.n_tmon), 1, dims);

    const DensityMatrix rho0 =
        DensityMatrix::from_state(fock_state(initial_even_fock, 0, 0, dims));
    ObservableRecord rec = evolve_observables(model, rho0, grid, {"png", "pne", "pe", "pf"},
                                              {png, pne, pe, pf}, opts);
    ConversionCurve out;
    out.times = rec.times;
    out.p_target_g = rec.values[0];
    out.p_e = rec.values[2];
    out.p_f = rec.values[3];
    out.converted.resize(rec.times.size());
    for (size_t i = 0; i < rec.times.size(); ++i)
        out.converted[i] = rec.values[0][i] - rec.values[1][i];
    for (size_t i = 1; i < out.converted.size(); ++i) {
        if (out.converted[i - 1] < 0.5 && out.converted[i] >= 0.5) {
            const double f = (0.5 - out.converted[i - 1]) / (out.converted[i] - out.converted[i - 1]);
            out.halftime_us = out.times[i - 1] + f * (out.times[i] - out.times[i - 1]);
            break;
        }
    }
    return out;
}

}  // namespace prespa
