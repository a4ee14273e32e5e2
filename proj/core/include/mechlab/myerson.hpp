#pragma once

#include <vector>

#include "mechlab/dist.hpp"

namespace mechlab {

struct PriceResult {
    Rational revenue;
    std::vector<Rational> optimal_prices;  // all maximizers, increasing
    Rational chosen_price;                 // smallest maximizer
};

// Optimal posted price for one item: max over p of p * P(X >= p).
// The objective p * tail(p) only changes value at atoms and increases
// linearly as p approaches the next atom from below, so restricting
// candidates to support atoms is exact for finite discrete distributions.
PriceResult rev1(const DiscreteDist& d);

// Sum of per-item optimal revenues.
Rational srev(const ProductDist& p);

// Optimal single price for the bundle: rev1 of the convolution of all items.
PriceResult brev(const ProductDist& p, std::size_t max_atoms = kDefaultSizeCap);

// Expected total value; an upper bound on any IC+IR+NPT revenue.
Rational val(const ProductDist& p);

// Maximal revenue from X (support within [x0, inf)) when the buyer must be
// guaranteed utility at least b0 and allocation probability at least q0:
// (1 - q0) * rev1(X) + q0 * x0 - b0.
Rational constrained_rev1(const DiscreteDist& d, const Rational& x0, const Rational& q0,
                          const Rational& b0);

}  // namespace mechlab
