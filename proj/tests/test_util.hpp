#pragma once

#include <random>
#include <set>
#include <vector>

#include "mechlab/dist.hpp"

namespace testutil {

// Random distribution with small integer atoms and small-denominator masses,
// to keep exact arithmetic cheap in property suites.
inline mechlab::DiscreteDist random_dist(std::mt19937_64& rng, std::size_t max_atoms = 6,
                                         long max_value = 12, bool allow_zero = true) {
    std::uniform_int_distribution<std::size_t> natoms(2, max_atoms);
    const std::size_t n = natoms(rng);
    std::uniform_int_distribution<long> value(allow_zero ? 0 : 1, max_value);
    std::set<long> vals;
    while (vals.size() < n) vals.insert(value(rng));
    std::uniform_int_distribution<long> weight(1, 9);
    std::vector<mechlab::Rational> sup, probs;
    long total = 0;
    std::vector<long> ws;
    for (std::size_t i = 0; i < n; ++i) {
        ws.push_back(weight(rng));
        total += ws.back();
    }
    std::size_t i = 0;
    for (long v : vals) {
        sup.push_back(mechlab::Rational(v));
        probs.push_back(mechlab::Rational(ws[i++], total));
    }
    return mechlab::DiscreteDist::make(std::move(sup), std::move(probs));
}

inline mechlab::ProductDist random_product(std::mt19937_64& rng, std::size_t k,
                                           std::size_t max_atoms = 6, long max_value = 12) {
    std::vector<mechlab::DiscreteDist> items;
    for (std::size_t i = 0; i < k; ++i) items.push_back(random_dist(rng, max_atoms, max_value));
    return mechlab::ProductDist(std::move(items));
}

}  // namespace testutil
