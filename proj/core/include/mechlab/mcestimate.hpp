#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "mechlab/error.hpp"

namespace mechlab {

// Counter-based generator: output i of stream s is a pure function of
// (seed, s, i), so sharded sampling is deterministic for a fixed seed and
// shard layout.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64() { return at(counter_++); }

    // uniform in [0, 1), clamped below 1 - 2^-53
    double next_unit() {
        const std::uint64_t bits = next_u64() >> 11;
        return static_cast<double>(bits) * 0x1.0p-53;
    }

    std::uint64_t at(std::uint64_t counter) const;

  private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

struct McConfig {
    std::uint64_t seed = 1;
    std::size_t samples = 1000000;
    std::vector<double> price_grid;  // empty: default log grid per estimator
};

struct BrevEstimate {
    double price;
    double revenue;
    double std_error;  // binomial standard error of the revenue at that price
};

struct GrowthRow {
    std::size_t k;
    double estimate;
    double std_error;
    double normalized;  // estimate / (k log k)
};

// One draw from the equal-revenue distribution: x = 1/(1-u), u uniform.
double er_draw(CounterRng& rng);

// k independent ER draws.
std::vector<double> er_sample(CounterRng& rng, std::size_t k);

// Monte Carlo lower estimate of the optimal bundle revenue for k i.i.d. ER
// items: maximizes p * Phat(sum >= p) over the price grid (default: 200
// log-spaced points on [max(1,k/2), 4 k log k], then a refinement pass).
BrevEstimate brev_lower_estimate(std::size_t k, const McConfig& cfg);

// One growth-table row per k; normalized column is estimate/(k log k).
std::vector<GrowthRow> growth_table(const std::vector<std::size_t>& ks, const McConfig& cfg);

}  // namespace mechlab
