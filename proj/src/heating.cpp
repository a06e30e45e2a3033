#include "prespa/heating.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "prespa/fit.hpp"

namespace prespa {

void ReadoutCalib::validate() const {
    if (std::abs(A - B) < 1e-9 || std::abs(B - C) < 1e-9 || std::abs(A - C) < 1e-9)
        throw std::invalid_argument("readout calibration values must be mutually distinct");
}

PopulationSolve solve_populations(double d1, double d2, double d3, double d4,
                                  const ReadoutCalib& calib) {
    calib.validate();
    Eigen::Matrix4d m;
    // columns: g, e, f, R
    m << calib.A, calib.B, calib.C, 1.0,
         calib.B, calib.C, calib.A, 1.0,
         calib.C, calib.B, calib.A, 1.0,
         calib.B, calib.A, calib.C, 1.0;
    Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
    if (!lu.isInvertible()) throw std::invalid_argument("singular readout system");
    const Eigen::Vector4d x = lu.solve(Eigen::Vector4d(d1, d2, d3, d4));
    return {x[0], x[1], x[2], x[3]};
}

double scale_population_difference(double background, double data, const ReadoutCalib& calib) {
    if (std::abs(calib.A - calib.B) < 1e-9)
        throw std::invalid_argument("degenerate readout contrast");
    return (background - data) / (calib.A - calib.B);
}

void RateModel::validate() const {
    if (!(T1ge_us > 0.0 && T1ef_us > 0.0)) throw std::invalid_argument("T1 times must be positive");
    if (r < 0.0) throw std::invalid_argument("rate ratio must be non-negative");
}

Eigen::Matrix3d RateModel::generator() const {
    validate();
    const double down_ge = 1.0 / T1ge_us, down_ef = 1.0 / T1ef_us;
    const double up_ge = r * down_ge, up_ef = r * down_ef;
    Eigen::Matrix3d g;
    g << -up_ge,            down_ge,            0.0,
          up_ge, -(down_ge + up_ef),            down_ef,
            0.0,              up_ef,           -down_ef;
    return g;
}

std::vector<std::array<double, 3>> evolve_rate_matrix(const RateModel& model,
                                                      const std::array<double, 3>& p0,
                                                      const std::vector<double>& times_us) {
    const Eigen::Matrix3d gen = model.generator();
    Eigen::Vector3d p(p0[0], p0[1], p0[2]);
    std::vector<std::array<double, 3>> out;
    out.reserve(times_us.size());
    for (double t : times_us) {
        if (t < 0.0) throw std::invalid_argument("times must be non-negative");
        const Eigen::Vector3d pt = (gen * t).exp() * p;
        out.push_back({pt[0], pt[1], pt[2]});
    }
    return out;
}

HeatingFit fit_heating_rate(const std::vector<double>& times_us,
                            const std::vector<std::array<double, 3>>& observed, double T1ge_us,
                            double T1ef_us) {
    if (times_us.size() != observed.size() || times_us.size() < 2)
        throw std::invalid_argument("heating fit needs at least two time points");
    const auto sse_of = [&](double r) {
        RateModel m{T1ge_us, T1ef_us, r};
        const auto pred = evolve_rate_matrix(m, observed.front(), times_us);
        double sse = 0.0;
        for (size_t k = 1; k < pred.size(); ++k)
            for (int s = 0; s < 3; ++s) {
                const double d = pred[k][s] - observed[k][s];
                sse += d * d;
            }
        return sse;
    };
    const double r = golden_minimize(sse_of, 0.0, 1.0, 1e-12);
    HeatingFit fit{r, r / T1ge_us * 1e3, sse_of(r)};
    if (!std::isfinite(fit.residual))
        throw std::runtime_error("heating fit failed: non-finite residual");
    return fit;
}

}  // namespace prespa
