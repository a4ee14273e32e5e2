#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mechlab/error.hpp"

namespace mechlab {

// Closed-form constants around the equal-revenue distribution
// (cdf 1 - 1/x on [1, inf)).
struct ERConstants {
    double w;              // solution of w e^w = 1/e
    double brev_er2;       // 2(w+1): optimal bundle revenue for two ER items
    double sep_bun_ratio;  // 1+w: bundling vs separate upper-bound factor
    double iid_bound;      // e/(e+1): two-iid-items separate-sale guarantee
    double c57;            // solution of 1 - e^-c = 2(1 - (c+1)e^-c)
};

// P(alpha X1 + beta X2 >= z) for independent ER variables:
// 1 for z <= alpha+beta, else
// (alpha beta / z^2) log(1 + (z^2 - (alpha+beta) z)/(alpha beta)) + (alpha+beta)/z.
double er_sum2_tail(double alpha, double beta, double z);

// Newton with bisection fallback on the defining equations.
ERConstants solve_constants(double tol = 1e-12);

// Maximizes p * er_sum2_tail(1,1,p) over a log grid of grid_n points followed
// by golden-section refinement.  The maximum is 2(w+1) at p = 1 + 1/w.
std::pair<double, double> brev_er2_via_price_sweep(std::size_t grid_n);

// Checks that the weighted sum tail is dominated by the equal-weight sum tail
// at every grid point (with ab = (a+b)/2 on both coordinates).
bool equalization_dominance_check(double alpha, double beta, const std::vector<double>& grid);

}  // namespace mechlab
