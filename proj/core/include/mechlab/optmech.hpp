#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mechlab/dist.hpp"
#include "mechlab/myerson.hpp"

namespace mechlab {

inline constexpr std::size_t kDefaultMaxTypes = 400;

enum class SolveMode { Exact, Float };

// Enumeration of the buyer's type space: every combination of item supports,
// in lexicographic order, with product-form masses.
class TypeSpace {
  public:
    static TypeSpace build(const ProductDist& p, std::size_t max_types = kDefaultMaxTypes);

    std::size_t num_types() const { return masses_.size(); }
    std::size_t num_items() const { return k_; }
    const std::vector<Rational>& type(std::size_t t) const { return types_[t]; }
    const std::vector<Rational>& mass() const { return masses_; }
    std::size_t index_of(const std::vector<Rational>& values) const;  // ShapeMismatch if absent

  private:
    std::size_t k_ = 0;
    std::vector<std::vector<Rational>> types_;
    std::vector<Rational> masses_;
};

// Per-type allocation vector q(x) in [0,1]^k and payment s(x).
struct MechanismTable {
    std::vector<std::vector<Rational>> alloc;  // [type][item]
    std::vector<Rational> pay;                 // [type]
};

struct ResidualReport {
    Rational max_ic_violation;
    Rational max_ir_violation;
    Rational max_npt_violation;       // reported, not part of pass/fail
    Rational max_monotone_violation;  // (x-x').(q(x)-q(x')) >= 0
    bool passes = false;              // IC, IR, weak monotonicity all within tol
};

struct LPSolution {
    Rational value;
    MechanismTable table;
    ResidualReport residuals;
    SolveMode mode = SolveMode::Exact;
};

// A menu entry: a lottery over the items at a posted price.  The buyer picks
// a utility-maximizing entry (the empty (0,0) entry is always available);
// ties are broken in the seller's favor.
struct MenuEntry {
    std::vector<Rational> alloc;
    Rational price;
};

struct DeterministicResult {
    Rational value;
    std::vector<MenuEntry> menu;  // entries actually priced (finite prices only)
};

// Optimal IC+IR mechanism revenue by linear programming over per-type
// allocations and payments: maximize sum_x f(x) s(x) subject to every
// ordered-pair IC constraint, IR for every type, and q in [0,1]^k.
// Constraints are activated lazily, but the returned solution is feasible
// for the full constraint set (verified exactly in exact mode).
LPSolution solve_optimal(const ProductDist& p, SolveMode mode = SolveMode::Exact,
                         std::size_t max_types = kDefaultMaxTypes);

// Residuals of a mechanism table against IC / IR / NPT / weak monotonicity.
ResidualReport validate(const MechanismTable& table, const TypeSpace& ts,
                        const Rational& tol = Rational(0));

// Expected payment sum; requires validate(table, ts, tol) to pass.
Rational mechanism_revenue(const MechanismTable& table, const TypeSpace& ts,
                           const Rational& tol = Rational(0));

// Best deterministic mechanism: a price for every nonempty subset of items
// (+inf allowed), searched over sums of support values.  Exponential in k;
// limited to k <= 3.
DeterministicResult best_deterministic(const ProductDist& p,
                                       std::size_t max_types = kDefaultMaxTypes);

// Expected revenue of a posted menu under seller-favorable tie-breaking.
Rational menu_revenue(const ProductDist& p, const std::vector<MenuEntry>& menu,
                      std::size_t max_types = kDefaultMaxTypes);

// The distinct (q(x), s(x)) pairs of a table, as a menu (taxation principle).
std::vector<MenuEntry> table_to_menu(const MechanismTable& table);

}  // namespace mechlab
