#include <doctest.h>

#include <algorithm>
#include <random>

#include "mechlab/myerson.hpp"
#include "mechlab/optmech.hpp"
#include "test_util.hpp"

using namespace mechlab;

namespace {

DiscreteDist u012() { return DiscreteDist::uniform({Rational(0), Rational(1), Rational(2)}); }

DiscreteDist hr11() {
    return DiscreteDist::make({Rational(1), Rational(2), Rational(4)},
                              {Rational(1, 6), Rational(1, 2), Rational(1, 3)});
}

}  // namespace

TEST_CASE("type space enumerates the product lexicographically") {
    auto p = ProductDist({DiscreteDist::uniform({Rational(1), Rational(2)}),
                          DiscreteDist::uniform({Rational(3), Rational(4), Rational(5)})});
    auto ts = TypeSpace::build(p);
    REQUIRE(ts.num_types() == 6);
    CHECK(ts.type(0) == std::vector<Rational>{Rational(1), Rational(3)});
    CHECK(ts.type(1) == std::vector<Rational>{Rational(1), Rational(4)});
    CHECK(ts.type(5) == std::vector<Rational>{Rational(2), Rational(5)});
    Rational total = 0;
    for (const auto& m : ts.mass()) total += m;
    CHECK(total == 1);
    CHECK(ts.index_of({Rational(2), Rational(3)}) == 3);
    CHECK_THROWS_AS(ts.index_of({Rational(9), Rational(9)}), Error);
}

TEST_CASE("type space cap") {
    auto p = ProductDist::iid(u012(), 2);
    CHECK_THROWS_AS(TypeSpace::build(p, 8), Error);
    try {
        TypeSpace::build(p, 8);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooManyTypes);
    }
}

TEST_CASE("optimal mechanism on two uniform{0,1,2} items") {
    auto p = ProductDist::iid(u012(), 2);
    auto sol = solve_optimal(p);
    CHECK(sol.value == Rational(13, 9));
    CHECK(sol.mode == SolveMode::Exact);
    CHECK(sol.residuals.passes);
    CHECK(sol.residuals.max_ic_violation == 0);
    CHECK(sol.residuals.max_ir_violation == 0);
    CHECK(srev(p) == Rational(4, 3));
    CHECK(brev(p).revenue == Rational(4, 3));

    auto det = best_deterministic(p);
    CHECK(det.value == Rational(13, 9));
    // the optimum is achieved by a single item at 2 plus the bundle at 3
    bool has_single_at_2 = false, has_bundle_at_3 = false;
    for (const auto& e : det.menu) {
        const int items = static_cast<int>(to_double(e.alloc[0] + e.alloc[1]));
        if (items == 1 && e.price == 2) has_single_at_2 = true;
        if (items == 2 && e.price == 3) has_bundle_at_3 = true;
    }
    CHECK(has_single_at_2);
    CHECK(has_bundle_at_3);
    CHECK(menu_revenue(p, det.menu) == Rational(13, 9));
}

TEST_CASE("lotteries beat every deterministic menu on the 1/2/4 instance") {
    auto p = ProductDist::iid(hr11(), 2);
    auto sol = solve_optimal(p);
    CHECK(sol.value == Rational(61, 18));
    auto det = best_deterministic(p);
    CHECK(det.value < sol.value);

    // the known optimal menu: half-lotteries on each item at 1, bundle at 4
    std::vector<MenuEntry> menu{{{Rational(1, 2), Rational(0)}, Rational(1)},
                                {{Rational(0), Rational(1, 2)}, Rational(1)},
                                {{Rational(1), Rational(1)}, Rational(4)}};
    CHECK(menu_revenue(p, menu) == Rational(61, 18));
}

TEST_CASE("float mode agrees with exact mode") {
    auto p = ProductDist::iid(u012(), 2);
    auto sol = solve_optimal(p, SolveMode::Float);
    CHECK(sol.mode == SolveMode::Float);
    CHECK(sol.residuals.passes);
    CHECK(std::abs(to_double(sol.value) - 13.0 / 9.0) < 1e-7);
}

TEST_CASE("single item LP reduces to the optimal posted price") {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 25; ++trial) {
        auto d = testutil::random_dist(rng, 6, 15);
        auto sol = solve_optimal(ProductDist({d}));
        CHECK(sol.value == rev1(d).revenue);
    }
}

TEST_CASE("solution is invariant under permuting the items") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = testutil::random_dist(rng, 4, 8);
        auto b = testutil::random_dist(rng, 4, 8);
        auto v1 = solve_optimal(ProductDist({a, b})).value;
        auto v2 = solve_optimal(ProductDist({b, a})).value;
        CHECK(v1 == v2);
    }
}

TEST_CASE("taxation principle: the solution table works as a posted menu") {
    auto p = ProductDist::iid(hr11(), 2);
    auto sol = solve_optimal(p);
    auto menu = table_to_menu(sol.table);
    CHECK(menu_revenue(p, menu) == sol.value);
}

TEST_CASE("LP value sits between the simple bounds") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = testutil::random_product(rng, 2, 4, 8);
        auto sol = solve_optimal(p);
        CHECK(sol.value >= srev(p));
        CHECK(sol.value >= brev(p).revenue);
        CHECK(sol.value <= val(p));
    }
}

TEST_CASE("validate flags violations") {
    auto p = ProductDist::iid(DiscreteDist::uniform({Rational(1), Rational(2)}), 2);
    auto ts = TypeSpace::build(p);
    MechanismTable t;
    t.alloc.assign(4, {Rational(1), Rational(1)});
    t.pay.assign(4, Rational(2));
    auto rep = validate(t, ts, Rational(0));
    CHECK(rep.passes);  // sell both at 2: every type affords it

    t.pay[0] = Rational(3);  // type (1,1) pays more than its value
    rep = validate(t, ts, Rational(0));
    CHECK(!rep.passes);
    CHECK(rep.max_ir_violation == 1);

    t.pay[0] = Rational(1);  // cheaper than everyone else: IC breaks
    rep = validate(t, ts, Rational(0));
    CHECK(rep.max_ic_violation == 1);

    MechanismTable bad;
    bad.alloc.assign(3, {Rational(1), Rational(1)});
    bad.pay.assign(3, Rational(0));
    CHECK_THROWS_AS(validate(bad, ts, Rational(0)), Error);
}

TEST_CASE("mechanism_revenue matches the LP objective") {
    auto p = ProductDist::iid(u012(), 2);
    auto ts = TypeSpace::build(p);
    auto sol = solve_optimal(p);
    CHECK(mechanism_revenue(sol.table, ts) == sol.value);
}

TEST_CASE("menu input validation") {
    auto p = ProductDist::iid(u012(), 2);
    CHECK_THROWS_AS(menu_revenue(p, {{{Rational(1)}, Rational(1)}}), Error);
    CHECK_THROWS_AS(menu_revenue(p, {{{Rational(2), Rational(0)}, Rational(1)}}), Error);
    CHECK_THROWS_AS(menu_revenue(p, {{{Rational(1), Rational(0)}, Rational(-1)}}), Error);
}

TEST_CASE("deterministic enumeration rejects k > 3") {
    auto p = ProductDist::iid(DiscreteDist::bernoulli(Rational(1, 2)), 4);
    CHECK_THROWS_AS(best_deterministic(p), Error);
}
