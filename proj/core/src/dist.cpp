#include "mechlab/dist.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace mechlab {

DiscreteDist DiscreteDist::make(std::vector<Rational> support, std::vector<Rational> probs) {
    if (support.size() != probs.size())
        throw Error(ErrorKind::BadProbability, "support and probs differ in length");
    std::map<Rational, Rational> atoms;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] < 0)
            throw Error(ErrorKind::NegativeValue, "support value " + to_string(support[i]));
        if (probs[i] < 0)
            throw Error(ErrorKind::BadProbability, "negative probability " + to_string(probs[i]));
        if (probs[i] == 0) continue;
        atoms[support[i]] += probs[i];
    }
    if (atoms.empty()) throw Error(ErrorKind::Empty, "no atoms with positive probability");
    Rational total = 0;
    for (const auto& [v, p] : atoms) total += p;
    if (total != 1) {
        // Float-derived inputs may be off by rounding; renormalize tiny drift.
        if (abs(total - 1) > Rational(1, 1000000000000LL))
            throw Error(ErrorKind::BadProbability, "probabilities sum to " + to_string(total));
        for (auto& [v, p] : atoms) p /= total;
    }
    DiscreteDist d;
    d.support_.reserve(atoms.size());
    d.probs_.reserve(atoms.size());
    for (auto& [v, p] : atoms) {
        d.support_.push_back(v);
        d.probs_.push_back(p);
    }
    return d;
}

DiscreteDist DiscreteDist::point_mass(const Rational& v) { return make({v}, {Rational(1)}); }

DiscreteDist DiscreteDist::uniform(std::vector<Rational> support) {
    if (support.empty()) throw Error(ErrorKind::Empty, "uniform over empty support");
    const std::size_t n = support.size();
    const Rational p(1, static_cast<long>(n));
    return make(std::move(support), std::vector<Rational>(n, p));
}

DiscreteDist DiscreteDist::bernoulli(const Rational& p) {
    if (p < 0 || p > 1) throw Error(ErrorKind::BadProbability, "bernoulli p = " + to_string(p));
    return make({Rational(0), Rational(1)}, {1 - p, p});
}

ProductDist::ProductDist(std::vector<DiscreteDist> items_) : items(std::move(items_)) {
    if (items.empty()) throw Error(ErrorKind::Empty, "product distribution needs k >= 1 items");
}

ProductDist ProductDist::iid(const DiscreteDist& d, std::size_t k) {
    if (k == 0) throw Error(ErrorKind::Empty, "k must be >= 1");
    return ProductDist(std::vector<DiscreteDist>(k, d));
}

Rational tail(const DiscreteDist& d, const Rational& p) {
    if (p < 0) throw Error(ErrorKind::NegativeValue, "tail at negative price");
    Rational t = 0;
    const auto& sup = d.support();
    for (std::size_t i = sup.size(); i-- > 0;) {
        if (sup[i] < p) break;
        t += d.probs()[i];
    }
    return t;
}

DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b, std::size_t max_atoms) {
    std::map<Rational, Rational> atoms;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            atoms[a.support()[i] + b.support()[j]] += a.probs()[i] * b.probs()[j];
        }
        if (atoms.size() > max_atoms)
            throw Error(ErrorKind::SizeCap, "convolution exceeds " + std::to_string(max_atoms) +
                                                " atoms");
    }
    std::vector<Rational> sup, probs;
    sup.reserve(atoms.size());
    probs.reserve(atoms.size());
    for (auto& [v, p] : atoms) {
        sup.push_back(v);
        probs.push_back(p);
    }
    return DiscreteDist::make(std::move(sup), std::move(probs));
}

DiscreteDist convolve_power(const DiscreteDist& d, std::size_t k, std::size_t max_atoms) {
    if (k == 0) throw Error(ErrorKind::BadGrid, "convolve_power needs k >= 1");
    // repeated squaring over convolve
    DiscreteDist base = d;
    DiscreteDist acc = DiscreteDist::point_mass(0);
    bool have_acc = false;
    while (k > 0) {
        if (k & 1) {
            acc = have_acc ? convolve(acc, base, max_atoms) : base;
            have_acc = true;
        }
        k >>= 1;
        if (k > 0) base = convolve(base, base, max_atoms);
    }
    return acc;
}

DiscreteDist binomial_dist(std::size_t k, const Rational& p) {
    if (p < 0 || p > 1) throw Error(ErrorKind::BadProbability, "binomial p = " + to_string(p));
    if (p == 0) return DiscreteDist::point_mass(0);
    if (p == 1) return DiscreteDist::point_mass(Rational(static_cast<long>(k)));
    // P(j+1)/P(j) = (k-j)/(j+1) * p/(1-p)
    const Rational ratio = p / (1 - p);
    std::vector<Rational> sup, probs;
    sup.reserve(k + 1);
    probs.reserve(k + 1);
    const Rational q = 1 - p;
    Rational cur = 1;  // (1-p)^k
    for (std::size_t j = 0; j < k; ++j) cur *= q;
    for (std::size_t j = 0; j <= k; ++j) {
        sup.push_back(Rational(static_cast<long>(j)));
        probs.push_back(cur);
        if (j < k)
            cur *= ratio * Rational(static_cast<long>(k - j), static_cast<long>(j + 1));
    }
    return DiscreteDist::make(std::move(sup), std::move(probs));
}

DiscreteDist scale(const DiscreteDist& d, const Rational& alpha) {
    if (alpha <= 0) throw Error(ErrorKind::BadScale, "scale factor " + to_string(alpha));
    std::vector<Rational> sup;
    sup.reserve(d.size());
    for (const auto& v : d.support()) sup.push_back(v * alpha);
    return DiscreteDist::make(std::move(sup), d.probs());
}

DiscreteDist truncate_above(const DiscreteDist& d, const Rational& M) {
    if (M <= 0) throw Error(ErrorKind::BadScale, "truncation bound " + to_string(M));
    std::vector<Rational> sup, probs;
    Rational moved = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d.support()[i] > M) {
            moved += d.probs()[i];
        } else {
            sup.push_back(d.support()[i]);
            probs.push_back(d.probs()[i]);
        }
    }
    if (moved > 0) {
        sup.push_back(M);
        probs.push_back(moved);
    }
    return DiscreteDist::make(std::move(sup), std::move(probs));
}

Rational expectation(const DiscreteDist& d) {
    Rational e = 0;
    for (std::size_t i = 0; i < d.size(); ++i) e += d.support()[i] * d.probs()[i];
    return e;
}

bool dominates(const DiscreteDist& a, const DiscreteDist& b) {
    // Walk both supports from the top, maintaining the two tails.
    std::vector<Rational> points;
    points.reserve(a.size() + b.size());
    points.insert(points.end(), a.support().begin(), a.support().end());
    points.insert(points.end(), b.support().begin(), b.support().end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (const auto& p : points) {
        if (tail(b, p) > tail(a, p)) return false;
    }
    return true;
}

DiscreteDist er_discretized(const Rational& r, const Rational& M, std::size_t n) {
    if (M <= r || n < 2)
        throw Error(ErrorKind::BadGrid,
                    "need M > r and n >= 2, got M=" + to_string(M) + " r=" + to_string(r) +
                        " n=" + std::to_string(n));
    // Geometric grid; the exact grid values are double-derived rationals, which
    // is fine since only tail-matching at the chosen points matters.
    const double lr = to_double(r), lM = to_double(M);
    std::vector<Rational> grid;
    grid.reserve(n);
    grid.push_back(r);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double g = lr * std::pow(lM / lr, static_cast<double>(i) / (n - 1));
        Rational rg = rational_from_double(g);
        if (rg <= grid.back()) rg = grid.back() + Rational(1, 1000000000);
        if (rg >= M) rg = (grid.back() + M) / 2;
        grid.push_back(rg);
    }
    grid.push_back(M);
    std::vector<Rational> probs;
    probs.reserve(n);
    for (std::size_t i = 0; i + 1 < n; ++i) probs.push_back(r / grid[i] - r / grid[i + 1]);
    probs.push_back(r / M);  // cdf mass of the last cell plus the residual tail
    return DiscreteDist::make(std::move(grid), std::move(probs));
}

}  // namespace mechlab
