#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mechlab/dist.hpp"
#include "mechlab/myerson.hpp"
#include "mechlab/optmech.hpp"

namespace mechlab {

struct BoundCheck {
    std::string name;
    bool applicable = false;
    bool passed = false;  // meaningful only when applicable and asserted
    bool asserted = true; // false for report-only ratios (unpinned constants)
    double slack = 0.0;   // lhs - rhs of the inequality, as a double
};

// All revenue quantities for one instance, plus the bound checks.
struct RevenueReport {
    std::string name;
    std::size_t k = 0;
    Rational srev;
    Rational brev;
    std::optional<Rational> rev_opt;  // absent when the LP was skipped
    Rational value;                   // Val: expected total value
    bool identical_items = false;
    Rational item_rev1;  // rev1 of one item when identical_items
    std::vector<BoundCheck> checks;
};

struct ReportOptions {
    bool run_lp = true;
    SolveMode mode = SolveMode::Exact;
    std::size_t max_types = kDefaultMaxTypes;
    std::size_t max_atoms = kDefaultSizeCap;
};

RevenueReport report(const ProductDist& p, const std::string& name,
                     const ReportOptions& opts = {});

// Evaluates every applicable revenue inequality on the report and fills the
// check list.  Ratios against unpinned constants are reported, not asserted.
std::vector<BoundCheck> verify_all(const RevenueReport& r);

// The near-1/k separation instance: F_i on {0, M^i} with P(M^i) = M^-i.
// Asserts srev = k and brev <= 1 + 1/(M-1).
RevenueReport example_1k(const Rational& M, std::size_t k, const ReportOptions& opts = {});

struct Example57Result {
    Rational brev;
    Rational srev;
    Rational ratio;
    Rational price1_revenue;
    Rational price2_revenue;
};

// Bernoulli(c/k) on {0,1}, k items, exact binomial bundle revenue over
// integer prices; c is the constant equalizing the price-1 and price-2
// revenues in the k -> infinity limit.
Example57Result example_57(std::size_t k);

// Checks x f'(x) + (3/2) f(x) <= 0 at every sample (x, f, f').
bool bundling_optimality_condition(
    const std::vector<std::array<double, 3>>& density_samples, double a, double slack = 1e-12);

struct BundlingGap {
    Rational rev_opt;
    Rational brev;
    Rational gap;  // rev_opt - brev
};

// Discretizes the power-law density c x^-gamma on [1, M] (tail folded into
// the last atom), takes two i.i.d. items, and compares the LP optimum with
// the bundle revenue.
BundlingGap bundling_optimality_numeric_check(double gamma, double M, std::size_t n,
                                              SolveMode mode = SolveMode::Float,
                                              std::size_t max_types = kDefaultMaxTypes);

// Power-law discretization used by the numeric check; exposed for reuse.
DiscreteDist power_law_discretized(double gamma, double M, std::size_t n);

struct LimitRow {
    std::size_t k;
    Rational brev_over_k;
    Rational expectation;
};

// Exact brev(F^{*k})/k per k; approaches E(F) as k grows.
std::vector<LimitRow> limit_check(const DiscreteDist& d, const std::vector<std::size_t>& ks,
                                  std::size_t max_atoms = kDefaultSizeCap);

// Rev(X,Y) <= Rev(X) + Rev(Y) + BRev(X) + BRev(Y) for a split of the items
// into two independent groups.  Returns the slack (rhs - lhs).
Rational group_decomposition_slack(const ProductDist& p, std::size_t split,
                                   SolveMode mode = SolveMode::Exact,
                                   std::size_t max_types = kDefaultMaxTypes);

// RFC-4180 CSV of reports, one row per instance (Appendix-table analogue).
std::string reports_to_csv(const std::vector<RevenueReport>& reports);

}  // namespace mechlab
