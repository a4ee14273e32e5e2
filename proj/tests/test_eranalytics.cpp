#include <doctest.h>

#include <cmath>

#include "mechlab/eranalytics.hpp"

using namespace mechlab;

namespace {

// Independent oracle for w e^w = 1/e: plain bisection.
double w_bisect() {
    double lo = 0, hi = 1;
    const double target = std::exp(-1.0);
    for (int i = 0; i < 200; ++i) {
        const double mid = (lo + hi) / 2;
        (mid * std::exp(mid) < target ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

// Independent oracle for (2c+1) e^-c = 1.
double c_bisect() {
    double lo = 0.5, hi = 5;
    for (int i = 0; i < 200; ++i) {
        const double mid = (lo + hi) / 2;
        ((2 * mid + 1) * std::exp(-mid) > 1 ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

}  // namespace

TEST_CASE("constants match independent bisection oracles") {
    auto c = solve_constants();
    CHECK(std::abs(c.w - w_bisect()) < 1e-12);
    CHECK(std::abs(c.c57 - c_bisect()) < 1e-12);
    CHECK(c.w == doctest::Approx(0.2784645).epsilon(1e-6));
    CHECK(c.c57 == doctest::Approx(1.2564312).epsilon(1e-6));
    CHECK(c.brev_er2 == 2 * (c.w + 1));
    CHECK(c.sep_bun_ratio == 1 + c.w);
    CHECK(c.iid_bound == doctest::Approx(0.73105857863).epsilon(1e-10));
    // the defining equations hold to the requested tolerance
    CHECK(std::abs(c.w * std::exp(c.w) - std::exp(-1.0)) < 1e-12);
    CHECK(std::abs((2 * c.c57 + 1) * std::exp(-c.c57) - 1) < 1e-12);
}

TEST_CASE("pair-sum tail closed form") {
    // below and at the kink the tail is 1
    CHECK(er_sum2_tail(1, 1, 0) == 1);
    CHECK(er_sum2_tail(1, 1, 2) == 1);
    CHECK(er_sum2_tail(2, 3, 5) == 1);
    // just above the kink it is continuous
    CHECK(er_sum2_tail(1, 1, 2.0000001) == doctest::Approx(1.0).epsilon(1e-5));
    // strictly decreasing past the kink
    double prev = 1;
    for (double z = 2.1; z < 50; z += 0.5) {
        const double t = er_sum2_tail(1, 1, z);
        CHECK(t < prev);
        CHECK(t > 0);
        prev = t;
    }
    // symmetric in the weights
    CHECK(er_sum2_tail(2, 5, 11) == er_sum2_tail(5, 2, 11));
    // numeric sanity against a direct quadrature of P(aX+bY >= z):
    // P = 1 - int_1^{(z-b)/a} (1/x^2) * (1 - b/(z-ax)) dx for z > a+b
    {
        const double a = 1, b = 1, z = 5;
        double acc = 0;
        const int n = 2000000;
        const double hi = (z - b) / a;
        for (int i = 0; i < n; ++i) {
            const double x = 1 + (hi - 1) * (i + 0.5) / n;
            acc += (1.0 / (x * x)) * (1 - b / (z - a * x));
        }
        acc *= (hi - 1) / n;
        CHECK(er_sum2_tail(a, b, z) == doctest::Approx(1 - acc).epsilon(1e-4));
    }
    CHECK_THROWS_AS(er_sum2_tail(0, 1, 3), Error);
    CHECK_THROWS_AS(er_sum2_tail(1, 1, -1), Error);
}

TEST_CASE("price sweep reproduces the closed-form bundle revenue") {
    auto c = solve_constants();
    auto [price, revenue] = brev_er2_via_price_sweep(1000);
    CHECK(std::abs(revenue - c.brev_er2) < 1e-6);
    CHECK(std::abs(price - (1 + 1 / c.w)) < 1e-3);
}

TEST_CASE("equal weights dominate unequal weights of the same total") {
    std::vector<double> grid;
    for (double z = 0; z < 40; z += 0.25) grid.push_back(z);
    CHECK(equalization_dominance_check(0.5, 1.5, grid));
    CHECK(equalization_dominance_check(0.1, 1.9, grid));
    CHECK(equalization_dominance_check(1.0, 1.0, grid));
}
