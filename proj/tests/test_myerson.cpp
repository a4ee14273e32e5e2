#include <doctest.h>

#include <algorithm>
#include <random>

#include "mechlab/myerson.hpp"
#include "test_util.hpp"

using namespace mechlab;

namespace {

// Brute-force oracle: scan candidate prices at every atom and every midpoint
// between atoms; midpoints can never beat atoms but must not exceed them.
Rational rev1_oracle(const DiscreteDist& d) {
    Rational best = 0;
    std::vector<Rational> candidates = d.support();
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        candidates.push_back((d.support()[i] + d.support()[i + 1]) / 2);
    for (const auto& p : candidates) {
        if (p == 0) continue;
        const Rational r = p * tail(d, p);
        if (r > best) best = r;
    }
    return best;
}

}  // namespace

TEST_CASE("rev1 on two-point uniform") {
    auto r = rev1(DiscreteDist::uniform({Rational(1), Rational(2)}));
    CHECK(r.revenue == 1);
    CHECK(r.chosen_price == 1);
    REQUIRE(r.optimal_prices.size() == 2);
    CHECK(r.optimal_prices[0] == 1);
    CHECK(r.optimal_prices[1] == 2);
}

TEST_CASE("rev1 point mass and bernoulli") {
    CHECK(rev1(DiscreteDist::point_mass(Rational(7, 2))).revenue == Rational(7, 2));
    auto b = rev1(DiscreteDist::bernoulli(Rational(1, 2)));
    CHECK(b.revenue == Rational(1, 2));
    CHECK(b.chosen_price == 1);
}

TEST_CASE("rev1 matches the brute-force oracle on random distributions") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        auto d = testutil::random_dist(rng, 8, 30);
        auto r = rev1(d);
        CHECK(r.revenue == rev1_oracle(d));
        // every reported optimal price attains the optimum
        for (const auto& p : r.optimal_prices) CHECK(p * tail(d, p) == r.revenue);
        CHECK(r.chosen_price == r.optimal_prices.front());
        CHECK(std::is_sorted(r.optimal_prices.begin(), r.optimal_prices.end()));
    }
}

TEST_CASE("srev and brev golden values") {
    auto u12 = DiscreteDist::uniform({Rational(1), Rational(2)});
    auto p = ProductDist::iid(u12, 2);
    CHECK(srev(p) == 2);
    auto b = brev(p);
    CHECK(b.revenue == Rational(9, 4));
    CHECK(b.chosen_price == 3);

    auto bern = ProductDist::iid(DiscreteDist::bernoulli(Rational(1, 2)), 2);
    CHECK(srev(bern) == 1);
    CHECK(brev(bern).revenue == Rational(3, 4));

    auto bern23 = ProductDist::iid(DiscreteDist::bernoulli(Rational(2, 3)), 2);
    auto b23 = brev(bern23);
    CHECK(b23.revenue == Rational(8, 9));
    REQUIRE(b23.optimal_prices.size() == 2);
    CHECK(b23.optimal_prices[0] == 1);
    CHECK(b23.optimal_prices[1] == 2);
}

TEST_CASE("val sums expectations") {
    auto p = ProductDist({DiscreteDist::uniform({Rational(1), Rational(2)}),
                          DiscreteDist::bernoulli(Rational(1, 3))});
    CHECK(val(p) == Rational(3, 2) + Rational(1, 3));
}

TEST_CASE("revenue is monotone under dominance") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = testutil::random_dist(rng);
        std::vector<Rational> up;
        for (const auto& v : a.support()) up.push_back(v + Rational(trial % 3 + 1, 2));
        auto shifted = DiscreteDist::make(std::move(up), a.probs());
        CHECK(rev1(shifted).revenue >= rev1(a).revenue);
    }
}

TEST_CASE("constrained revenue formula") {
    auto d = DiscreteDist::uniform({Rational(2), Rational(4)});
    // no constraint: plain optimal price
    CHECK(constrained_rev1(d, Rational(2), Rational(0), Rational(0)) == rev1(d).revenue);
    // full pre-allocation: sell at the floor value, minus the promised utility
    CHECK(constrained_rev1(d, Rational(2), Rational(1), Rational(1, 2)) ==
          Rational(2) - Rational(1, 2));
    // midpoint
    CHECK(constrained_rev1(d, Rational(2), Rational(1, 2), Rational(0)) ==
          rev1(d).revenue / 2 + 1);
    CHECK_THROWS_AS(constrained_rev1(d, Rational(3), Rational(0), Rational(0)), Error);
    CHECK_THROWS_AS(constrained_rev1(d, Rational(2), Rational(2), Rational(0)), Error);
    CHECK_THROWS_AS(constrained_rev1(d, Rational(2), Rational(0), Rational(-1)), Error);
}
