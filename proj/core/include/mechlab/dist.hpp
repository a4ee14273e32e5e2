#pragma once

#include <cstddef>
#include <vector>

#include "mechlab/error.hpp"
#include "mechlab/rational.hpp"

namespace mechlab {

inline constexpr std::size_t kDefaultSizeCap = 100000;

// One-dimensional finite-support distribution over nonnegative values.
// Support is strictly increasing, every stored atom has positive mass,
// and the masses sum to exactly 1.
class DiscreteDist {
  public:
    // Drops zero-mass atoms, merges duplicates, sorts the support.
    // Throws NegativeValue / BadProbability / Empty.
    static DiscreteDist make(std::vector<Rational> support, std::vector<Rational> probs);

    static DiscreteDist point_mass(const Rational& v);
    static DiscreteDist uniform(std::vector<Rational> support);
    static DiscreteDist bernoulli(const Rational& p);  // on {0,1}

    const std::vector<Rational>& support() const { return support_; }
    const std::vector<Rational>& probs() const { return probs_; }
    std::size_t size() const { return support_.size(); }

    bool operator==(const DiscreteDist& other) const = default;

  private:
    DiscreteDist() = default;
    std::vector<Rational> support_;
    std::vector<Rational> probs_;
};

// k independent items.
struct ProductDist {
    std::vector<DiscreteDist> items;

    explicit ProductDist(std::vector<DiscreteDist> items_);
    ProductDist(std::initializer_list<DiscreteDist> items_)
        : ProductDist(std::vector<DiscreteDist>(items_)) {}
    static ProductDist iid(const DiscreteDist& d, std::size_t k);

    std::size_t k() const { return items.size(); }
};

// P(X >= p); the inequality is closed at p.
Rational tail(const DiscreteDist& d, const Rational& p);

// Distribution of X+Y for independent X~a, Y~b.
DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b,
                      std::size_t max_atoms = kDefaultSizeCap);

// k-fold self-convolution by repeated squaring.
DiscreteDist convolve_power(const DiscreteDist& d, std::size_t k,
                            std::size_t max_atoms = kDefaultSizeCap);

// Binomial(k, p) as a DiscreteDist on {0..k}; same result as
// convolve_power(bernoulli(p), k) but computed by the ratio recurrence,
// which stays cheap for large k.
DiscreteDist binomial_dist(std::size_t k, const Rational& p);

DiscreteDist scale(const DiscreteDist& d, const Rational& alpha);

// Distribution of min{X, M}.
DiscreteDist truncate_above(const DiscreteDist& d, const Rational& M);

Rational expectation(const DiscreteDist& d);

// True iff a first-order stochastically dominates b:
// P(Xb >= p) <= P(Xa >= p) for all p. Checking at the union of the two
// supports suffices since both tails are right-continuous step functions.
bool dominates(const DiscreteDist& a, const DiscreteDist& b);

// Discretization of the scaled equal-revenue distribution (cdf 1 - r/x on
// [r, inf)) on a geometric grid r = g_0 < ... < g_{n-1} = M.  Atom g_i
// carries cdf mass up to g_{i+1}; the last atom also carries the residual
// tail r/M.  By construction tail(result, g_i) = r/g_i exactly, so the
// result is dominated by r*ER and every grid price yields revenue exactly r.
DiscreteDist er_discretized(const Rational& r, const Rational& M, std::size_t n);

}  // namespace mechlab
