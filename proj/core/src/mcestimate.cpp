#include "mechlab/mcestimate.hpp"

#include <algorithm>
#include <cmath>

namespace mechlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : base_(splitmix64(seed ^ splitmix64(stream))) {}

std::uint64_t CounterRng::at(std::uint64_t counter) const {
    // second mixing round over the (seed, stream) base and the counter
    return splitmix64(base_ ^ counter);
}

double er_draw(CounterRng& rng) {
    double u = rng.next_unit();
    const double cap = 1.0 - 0x1.0p-53;
    if (u > cap) u = cap;  // keeps 1/(1-u) finite; bias below 2^-53 per tail
    return 1.0 / (1.0 - u);
}

std::vector<double> er_sample(CounterRng& rng, std::size_t k) {
    if (k == 0) throw Error(ErrorKind::BadGrid, "k must be >= 1");
    std::vector<double> out(k);
    for (auto& x : out) x = er_draw(rng);
    return out;
}

namespace {

std::vector<double> default_price_grid(std::size_t k) {
    const double kk = static_cast<double>(k);
    const double lo = std::max(1.0, kk / 2);
    const double hi = std::max(lo * 4, 4 * kk * std::log(std::max(kk, 2.0)));
    std::vector<double> grid(200);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (grid.size() - 1));
    return grid;
}

BrevEstimate sweep(const std::vector<double>& sums, const std::vector<double>& grid) {
    // sums must be sorted ascending
    const double n = static_cast<double>(sums.size());
    BrevEstimate best{grid.front(), -1.0, 0.0};
    for (double p : grid) {
        const auto it = std::lower_bound(sums.begin(), sums.end(), p);
        const double hits = static_cast<double>(sums.end() - it);
        const double q = hits / n;
        const double rev = p * q;
        if (rev > best.revenue) best = {p, rev, p * std::sqrt(q * (1 - q) / n)};
    }
    return best;
}

}  // namespace

BrevEstimate brev_lower_estimate(std::size_t k, const McConfig& cfg) {
    if (k == 0) throw Error(ErrorKind::BadGrid, "k must be >= 1");
    if (cfg.samples == 0) throw Error(ErrorKind::BadGrid, "need at least one sample");
    std::vector<double> sums(cfg.samples);
    for (std::size_t s = 0; s < cfg.samples; ++s) {
        CounterRng rng(cfg.seed, s);  // one substream per sample
        double total = 0;
        for (std::size_t i = 0; i < k; ++i) total += er_draw(rng);
        sums[s] = total;
    }
    std::sort(sums.begin(), sums.end());

    std::vector<double> grid = cfg.price_grid.empty() ? default_price_grid(k) : cfg.price_grid;
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw Error(ErrorKind::BadGrid, "price grid must be increasing");
    BrevEstimate best = sweep(sums, grid);
    // refinement pass around the best grid price
    std::vector<double> fine(101);
    const double lo = best.price * 0.8, hi = best.price * 1.25;
    for (std::size_t i = 0; i < fine.size(); ++i)
        fine[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (fine.size() - 1));
    const BrevEstimate refined = sweep(sums, fine);
    return refined.revenue > best.revenue ? refined : best;
}

std::vector<GrowthRow> growth_table(const std::vector<std::size_t>& ks, const McConfig& cfg) {
    std::vector<GrowthRow> rows;
    rows.reserve(ks.size());
    for (std::size_t k : ks) {
        if (k < 2) throw Error(ErrorKind::BadGrid, "growth table needs k >= 2");
        const BrevEstimate est = brev_lower_estimate(k, cfg);
        const double norm = est.revenue / (static_cast<double>(k) * std::log(static_cast<double>(k)));
        rows.push_back({k, est.revenue, est.std_error, norm});
    }
    return rows;
}

}  // namespace mechlab
