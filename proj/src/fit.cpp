#include "prespa/fit.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace prespa {

double golden_minimize(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol * (std::abs(a) + std::abs(b) + 1e-30)) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - phi * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + phi * (b - a); fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

namespace {

struct Projected {
    double offset, amplitude, sse;
};

Projected project(const std::vector<double>& t, const std::vector<double>& y, double T,
                  const double* fixed_offset) {
    const size_t n = t.size();
    Projected p{};
    if (fixed_offset) {
        double ee = 0.0, ey = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double e = std::exp(-t[i] / T);
            ee += e * e;
            ey += e * (y[i] - *fixed_offset);
        }
        p.offset = *fixed_offset;
        p.amplitude = ee > 0.0 ? ey / ee : 0.0;
    } else {
        // normal equations for y = a + c*e
        double se = 0.0, see = 0.0, sy = 0.0, sey = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double e = std::exp(-t[i] / T);
            se += e; see += e * e; sy += y[i]; sey += e * y[i];
        }
        const double det = double(n) * see - se * se;
        if (std::abs(det) < 1e-300) {
            p.offset = sy / double(n);
            p.amplitude = 0.0;
        } else {
            p.offset = (sy * see - se * sey) / det;
            p.amplitude = (double(n) * sey - se * sy) / det;
        }
    }
    for (size_t i = 0; i < n; ++i) {
        const double r = y[i] - p.offset - p.amplitude * std::exp(-t[i] / T);
        p.sse += r * r;
    }
    return p;
}

}  // namespace

ExpFit fit_exponential(const std::vector<double>& t, const std::vector<double>& y,
                       const double* fixed_offset, double t_min, double t_max) {
    if (t.size() != y.size() || t.size() < 3)
        throw std::invalid_argument("exponential fit needs at least three samples");
    auto sse_of = [&](double logT) { return project(t, y, std::exp(logT), fixed_offset).sse; };
    const int n_scan = 400;
    double best_logT = std::log(t_min), best_sse = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_scan; ++i) {
        const double logT = std::log(t_min) + (std::log(t_max) - std::log(t_min)) * i / (n_scan - 1);
        const double s = sse_of(logT);
        if (s < best_sse) { best_sse = s; best_logT = logT; }
    }
    const double step = (std::log(t_max) - std::log(t_min)) / (n_scan - 1);
    const double refined = golden_minimize(sse_of, best_logT - 2 * step, best_logT + 2 * step, 1e-12);
    const double T = std::exp(refined);
    Projected p = project(t, y, T, fixed_offset);

    ExpFit fit;
    fit.offset = p.offset;
    fit.amplitude = p.amplitude;
    fit.T = T;
    fit.sse = p.sse;
    // linearized standard error on T from the diagonal of (J^T J)^-1
    {
        const size_t n = t.size();
        const int n_par = fixed_offset ? 2 : 3;
        if (int(n) > n_par) {
            double jtj = 0.0;  // d f / d T column, other columns projected out approximately
            for (size_t i = 0; i < n; ++i) {
                const double e = std::exp(-t[i] / T);
                const double dT = p.amplitude * e * t[i] / (T * T);
                jtj += dT * dT;
            }
            const double s2 = p.sse / double(n - n_par);
            fit.T_stderr = jtj > 0.0 ? std::sqrt(s2 / jtj) : 0.0;
        }
    }
    return fit;
}

std::pair<double, double> linear_fit(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() != y.size() || t.size() < 2)
        throw std::invalid_argument("linear fit needs at least two samples");
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    const double n = double(t.size());
    for (size_t i = 0; i < t.size(); ++i) {
        st += t[i]; sy += y[i]; stt += t[i] * t[i]; sty += t[i] * y[i];
    }
    const double det = n * stt - st * st;
    if (std::abs(det) < 1e-300) throw std::invalid_argument("degenerate abscissa in linear fit");
    const double b = (n * sty - st * sy) / det;
    const double a = (sy - b * st) / n;
    return {a, b};
}

}  // namespace prespa
