#include "mechlab/myerson.hpp"

#include <algorithm>

namespace mechlab {

PriceResult rev1(const DiscreteDist& d) {
    PriceResult res;
    res.revenue = -1;
    Rational t = 0;  // running tail, built from the top atom down
    std::vector<Rational> best;
    for (std::size_t i = d.size(); i-- > 0;) {
        t += d.probs()[i];
        const Rational obj = d.support()[i] * t;
        if (obj > res.revenue) {
            res.revenue = obj;
            best.assign(1, d.support()[i]);
        } else if (obj == res.revenue) {
            best.push_back(d.support()[i]);
        }
    }
    std::reverse(best.begin(), best.end());
    res.optimal_prices = std::move(best);
    res.chosen_price = res.optimal_prices.front();
    return res;
}

Rational srev(const ProductDist& p) {
    Rational total = 0;
    for (const auto& item : p.items) total += rev1(item).revenue;
    return total;
}

PriceResult brev(const ProductDist& p, std::size_t max_atoms) {
    DiscreteDist sum = p.items.front();
    for (std::size_t i = 1; i < p.items.size(); ++i) sum = convolve(sum, p.items[i], max_atoms);
    return rev1(sum);
}

Rational val(const ProductDist& p) {
    Rational total = 0;
    for (const auto& item : p.items) total += expectation(item);
    return total;
}

Rational constrained_rev1(const DiscreteDist& d, const Rational& x0, const Rational& q0,
                          const Rational& b0) {
    if (q0 < 0 || q0 > 1) throw Error(ErrorKind::BadProbability, "q0 = " + to_string(q0));
    if (b0 < 0) throw Error(ErrorKind::NegativeValue, "b0 = " + to_string(b0));
    if (d.support().front() < x0)
        throw Error(ErrorKind::SupportBelowFloor,
                    "atom " + to_string(d.support().front()) + " below floor " + to_string(x0));
    return (1 - q0) * rev1(d).revenue + q0 * x0 - b0;
}

}  // namespace mechlab
