#include "mechlab/eranalytics.hpp"

#include <cmath>
#include <functional>

namespace mechlab {

namespace {

// Newton iteration with a bisection fallback when a step leaves [lo, hi].
double find_root(const std::function<double(double)>& f, const std::function<double(double)>& df,
                 double start, double lo, double hi, double tol) {
    double x = start;
    for (int iter = 0; iter < 100; ++iter) {
        const double fx = f(x);
        if (std::abs(fx) <= tol) return x;
        if (fx > 0)
            hi = std::min(hi, x);
        else
            lo = std::max(lo, x);
        const double d = df(x);
        double next = (d != 0) ? x - fx / d : x;
        if (!(next > lo && next < hi)) next = (lo + hi) / 2;
        x = next;
    }
    throw Error(ErrorKind::NoConvergence, "root finding did not converge");
}

}  // namespace

double er_sum2_tail(double alpha, double beta, double z) {
    if (alpha <= 0 || beta <= 0)
        throw Error(ErrorKind::BadWeights, "weights must be positive");
    if (z < 0) throw Error(ErrorKind::BadWeights, "negative threshold");
    const double s = alpha + beta;
    if (z <= s) return 1.0;
    const double ab = alpha * beta;
    const double t = ab / (z * z) * std::log1p((z * z - s * z) / ab) + s / z;
    return std::min(1.0, std::max(0.0, t));
}

ERConstants solve_constants(double tol) {
    if (tol <= 0) throw Error(ErrorKind::BadWeights, "tolerance must be positive");
    ERConstants c{};
    // w e^w = 1/e; f increasing on [0, 1]
    const double inv_e = std::exp(-1.0);
    c.w = find_root([&](double w) { return w * std::exp(w) - inv_e; },
                    [](double w) { return (w + 1) * std::exp(w); }, 0.3, 0.0, 1.0, tol);
    // (2c+1) e^-c = 1, i.e. 1 - e^-c = 2(1 - (c+1)e^-c); decreasing past c=1/2
    c.c57 = find_root([](double x) { return 1.0 - (2 * x + 1) * std::exp(-x); },
                      [](double x) { return (2 * x - 1) * std::exp(-x); }, 1.2, 0.5, 5.0, tol);
    c.brev_er2 = 2 * (c.w + 1);
    c.sep_bun_ratio = 1 + c.w;
    c.iid_bound = std::exp(1.0) / (std::exp(1.0) + 1.0);
    return c;
}

std::pair<double, double> brev_er2_via_price_sweep(std::size_t grid_n) {
    if (grid_n < 100) throw Error(ErrorKind::BadGrid, "need at least 100 grid points");
    auto revenue = [](double p) { return p * er_sum2_tail(1.0, 1.0, p); };
    // log-spaced grid over [2, 100]; the true maximizer 1+1/w is ~4.59
    const double lo = std::log(2.0), hi = std::log(100.0);
    double best_p = 2.0, best_r = revenue(2.0);
    for (std::size_t i = 0; i < grid_n; ++i) {
        const double p = std::exp(lo + (hi - lo) * static_cast<double>(i) / (grid_n - 1));
        const double r = revenue(p);
        if (r > best_r) {
            best_r = r;
            best_p = p;
        }
    }
    // golden-section refinement around the best grid point
    const double phi = (std::sqrt(5.0) - 1) / 2;
    double a = best_p * 0.8, b = best_p * 1.25;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = revenue(x1), f2 = revenue(x2);
    for (int it = 0; it < 200 && b - a > 1e-12 * best_p; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = revenue(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = revenue(x1);
        }
    }
    const double p = (a + b) / 2;
    return {p, revenue(p)};
}

bool equalization_dominance_check(double alpha, double beta, const std::vector<double>& grid) {
    const double mean = (alpha + beta) / 2;
    for (double z : grid) {
        if (z < 0) throw Error(ErrorKind::BadWeights, "negative grid point");
        if (er_sum2_tail(alpha, beta, z) > er_sum2_tail(mean, mean, z) + 1e-15) return false;
    }
    return true;
}

}  // namespace mechlab
