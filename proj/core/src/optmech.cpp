#include "mechlab/optmech.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>

#include "mechlab/lp.hpp"

namespace mechlab {

TypeSpace TypeSpace::build(const ProductDist& p, std::size_t max_types) {
    std::size_t count = 1;
    for (const auto& item : p.items) {
        count *= item.size();
        if (count > max_types)
            throw Error(ErrorKind::TooManyTypes,
                        "type space exceeds cap of " + std::to_string(max_types));
    }
    TypeSpace ts;
    ts.k_ = p.k();
    ts.types_.reserve(count);
    ts.masses_.reserve(count);
    std::vector<std::size_t> idx(p.k(), 0);
    for (;;) {
        std::vector<Rational> vals(p.k());
        Rational mass = 1;
        for (std::size_t i = 0; i < p.k(); ++i) {
            vals[i] = p.items[i].support()[idx[i]];
            mass *= p.items[i].probs()[idx[i]];
        }
        ts.types_.push_back(std::move(vals));
        ts.masses_.push_back(std::move(mass));
        // odometer increment, last item fastest => lexicographic order
        std::size_t i = p.k();
        while (i-- > 0) {
            if (++idx[i] < p.items[i].size()) break;
            idx[i] = 0;
            if (i == 0) return ts;
        }
    }
}

std::size_t TypeSpace::index_of(const std::vector<Rational>& values) const {
    for (std::size_t t = 0; t < types_.size(); ++t)
        if (types_[t] == values) return t;
    throw Error(ErrorKind::ShapeMismatch, "type not in type space");
}

namespace {

template <typename T>
T scalar_from(const Rational& r) {
    if constexpr (std::is_same_v<T, double>)
        return to_double(r);
    else
        return r;
}

Rational rational_from(const Rational& r) { return r; }
Rational rational_from(double d) { return rational_from_double(d); }

// Variables of the mechanism LP:  q[t*k+i],  then s(x) split as s = sp - sn.
template <typename T>
struct MechLpVars {
    std::size_t nt, k;
    std::size_t q(std::size_t t, std::size_t i) const { return t * k + i; }
    std::size_t sp(std::size_t t) const { return nt * k + t; }
    std::size_t sn(std::size_t t) const { return nt * k + nt + t; }
    std::size_t count() const { return nt * (k + 2); }
};

template <typename T>
LPSolution solve_optimal_impl(const TypeSpace& ts, SolveMode mode) {
    const std::size_t nt = ts.num_types();
    const std::size_t k = ts.num_items();
    MechLpVars<T> v{nt, k};

    std::vector<std::vector<T>> x(nt, std::vector<T>(k));
    std::vector<T> mass(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        mass[t] = scalar_from<T>(ts.mass()[t]);
        for (std::size_t i = 0; i < k; ++i) x[t][i] = scalar_from<T>(ts.type(t)[i]);
    }

    auto make_ic_row = [&](std::size_t t, std::size_t t2) {
        // x_t.q(t2) - s(t2) <= x_t.q(t) - s(t)
        std::vector<std::pair<std::size_t, T>> row;
        row.reserve(2 * k + 4);
        for (std::size_t i = 0; i < k; ++i) {
            if (x[t][i] != T(0)) {
                row.emplace_back(v.q(t2, i), x[t][i]);
                row.emplace_back(v.q(t, i), -x[t][i]);
            }
        }
        row.emplace_back(v.sp(t), T(1));
        row.emplace_back(v.sn(t), T(-1));
        row.emplace_back(v.sp(t2), T(-1));
        row.emplace_back(v.sn(t2), T(1));
        return row;
    };

    // IC constraints are activated lazily: start from grid neighbors (types
    // that differ in a single coordinate, adjacent in that coordinate), then
    // add whatever the current solution violates, until the solution is
    // feasible for every ordered pair (and hence optimal).
    std::vector<bool> active(nt * nt, false);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    auto activate = [&](std::size_t a, std::size_t b) {
        if (a == b || active[a * nt + b]) return;
        active[a * nt + b] = true;
        pairs.emplace_back(a, b);
    };
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::size_t> order(nt);
        for (std::size_t t = 0; t < nt; ++t) order[t] = t;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            for (std::size_t j = 0; j < k; ++j) {
                if (j == i) continue;
                if (ts.type(a)[j] != ts.type(b)[j]) return ts.type(a)[j] < ts.type(b)[j];
            }
            return ts.type(a)[i] < ts.type(b)[i];
        });
        for (std::size_t p = 0; p + 1 < nt; ++p) {
            const std::size_t a = order[p], b = order[p + 1];
            bool same_rest = true;
            for (std::size_t j = 0; j < k && same_rest; ++j)
                if (j != i && ts.type(a)[j] != ts.type(b)[j]) same_rest = false;
            if (!same_rest) continue;
            activate(a, b);
            activate(b, a);
        }
    }

    const T viol_tol = lp::detail::Tol<T>::feas();
    std::vector<T> qv(nt * k), sv(nt);

    // In float mode the LP is massively degenerate (every IC and IR row has
    // zero rhs), which makes the simplex cycle numerically.  A tiny
    // deterministic perturbation of the rhs removes the degeneracy; the value
    // shift it introduces is far below the validation tolerance.
    std::uint64_t pstate = 0x9e3779b97f4a7c15ULL;
    auto loosen = [&](T bound) -> T {
        if constexpr (std::is_same_v<T, double>) {
            pstate = pstate * 6364136223846793005ULL + 1442695040888963407ULL;
            return bound + 1e-10 * (1.0 + static_cast<double>(pstate >> 11) * 0x1.0p-53);
        } else {
            return bound;
        }
    };

    lp::Problem<T> prob;
    prob.num_vars = v.count();
    prob.objective.assign(v.count(), T(0));
    for (std::size_t t = 0; t < nt; ++t) {
        prob.objective[v.sp(t)] = mass[t];
        prob.objective[v.sn(t)] = -mass[t];
    }
    for (std::size_t t = 0; t < nt; ++t) {
        // IR: s(t) <= x_t . q(t)
        std::vector<std::pair<std::size_t, T>> row;
        for (std::size_t i = 0; i < k; ++i)
            if (x[t][i] != T(0)) row.emplace_back(v.q(t, i), -x[t][i]);
        row.emplace_back(v.sp(t), T(1));
        row.emplace_back(v.sn(t), T(-1));
        prob.add_row(std::move(row), loosen(T(0)));
        for (std::size_t i = 0; i < k; ++i)
            prob.add_row({{v.q(t, i), T(1)}}, loosen(T(1)));
    }
    for (const auto& [t, t2] : pairs) prob.add_row(make_ic_row(t, t2), loosen(T(0)));

    lp::SimplexSolver<T> solver(prob);
    lp::Solution<T> sol = solver.solve();
    const std::size_t max_rounds = nt * nt + 16;
    bool converged = false;
    for (std::size_t round = 0; round < max_rounds; ++round) {
        if (sol.status != lp::Status::Optimal)
            throw Error(ErrorKind::SolverStall, "mechanism LP did not reach an optimum");

        for (std::size_t t = 0; t < nt; ++t) {
            sv[t] = sol.x[v.sp(t)] - sol.x[v.sn(t)];
            for (std::size_t i = 0; i < k; ++i) qv[t * k + i] = sol.x[v.q(t, i)];
        }
        // the dense float tableau can drift over many warm-started pivots;
        // if rows already in the LP have come loose, rebuild from scratch
        if constexpr (std::is_same_v<T, double>) {
            double worst_active = 0;
            for (const auto& [t, t2] : pairs) {
                double truthful = -sv[t], dev = -sv[t2];
                for (std::size_t i = 0; i < k; ++i) {
                    truthful += x[t][i] * qv[t * k + i];
                    dev += x[t][i] * qv[t2 * k + i];
                }
                worst_active = std::max(worst_active, dev - truthful);
            }
            if (std::getenv("MECHLAB_LP_DEBUG"))
                std::fprintf(stderr, "round %zu: pairs=%zu iters=%zu active_viol=%.3e\n",
                             round, pairs.size(), sol.iterations, worst_active);
            if (worst_active > 1e-6) {
                if (std::getenv("MECHLAB_LP_DEBUG"))
                    std::fprintf(stderr, "cold restart: tableau drift\n");
                solver = lp::SimplexSolver<T>(prob);
                sol = solver.solve();
                continue;
            }
        } else if (std::getenv("MECHLAB_LP_DEBUG")) {
            std::fprintf(stderr, "round %zu: pairs=%zu iters=%zu\n", round, pairs.size(),
                         sol.iterations);
        }
        // scan all ordered pairs for IC violations
        std::vector<std::tuple<T, std::size_t, std::size_t>> violated;
        for (std::size_t t = 0; t < nt; ++t) {
            T truthful = -sv[t];
            for (std::size_t i = 0; i < k; ++i) truthful += x[t][i] * qv[t * k + i];
            for (std::size_t t2 = 0; t2 < nt; ++t2) {
                if (t2 == t || active[t * nt + t2]) continue;
                T dev = -sv[t2];
                for (std::size_t i = 0; i < k; ++i) dev += x[t][i] * qv[t2 * k + i];
                if (dev - truthful > viol_tol) violated.emplace_back(dev - truthful, t, t2);
            }
        }
        if (violated.empty()) {
            converged = true;
            break;
        }
        const std::size_t add = std::min<std::size_t>(violated.size(), 1000);
        std::partial_sort(violated.begin(), violated.begin() + add, violated.end(),
                          [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
        for (std::size_t j = 0; j < add; ++j) {
            auto [viol, t, t2] = violated[j];
            pairs.emplace_back(t, t2);
            active[t * nt + t2] = true;
            auto row = make_ic_row(t, t2);
            T bound = loosen(T(0));
            solver.add_row(row, bound);
            prob.add_row(std::move(row), std::move(bound));
        }
        try {
            sol = solver.reoptimize(4 * prob.rows.size() + 2000);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SolverStall) throw;
            // warm start went nowhere (degenerate cycling); solve the
            // accumulated problem from scratch
            if (std::getenv("MECHLAB_LP_DEBUG"))
                std::fprintf(stderr, "cold restart: %s\n", e.what());
            solver = lp::SimplexSolver<T>(prob);
            sol = solver.solve();
        }
    }
    if (!converged)
        throw Error(ErrorKind::SolverStall, "constraint generation did not converge");

    LPSolution res;
    res.mode = mode;
    res.value = rational_from(sol.value);
    res.table.alloc.assign(nt, std::vector<Rational>(k));
    res.table.pay.resize(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        res.table.pay[t] = rational_from(sv[t]);
        for (std::size_t i = 0; i < k; ++i) {
            Rational q = rational_from(qv[t * k + i]);
            // float solves can leave tiny bound violations; clamp them
            if (q < 0) q = 0;
            if (q > 1) q = 1;
            res.table.alloc[t][i] = q;
        }
    }
    const Rational tol = (mode == SolveMode::Exact) ? Rational(0) : rational_from_double(1e-6);
    res.residuals = validate(res.table, ts, tol);
    return res;
}

}  // namespace

LPSolution solve_optimal(const ProductDist& p, SolveMode mode, std::size_t max_types) {
    TypeSpace ts = TypeSpace::build(p, max_types);
    if (mode == SolveMode::Float) return solve_optimal_impl<double>(ts, mode);
    return solve_optimal_impl<Rational>(ts, mode);
}

ResidualReport validate(const MechanismTable& table, const TypeSpace& ts, const Rational& tol) {
    const std::size_t nt = ts.num_types();
    const std::size_t k = ts.num_items();
    if (table.alloc.size() != nt || table.pay.size() != nt)
        throw Error(ErrorKind::ShapeMismatch, "table size does not match type space");
    for (const auto& row : table.alloc)
        if (row.size() != k) throw Error(ErrorKind::ShapeMismatch, "allocation width mismatch");

    std::vector<Rational> utility(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        Rational u = -table.pay[t];
        for (std::size_t i = 0; i < k; ++i) u += ts.type(t)[i] * table.alloc[t][i];
        utility[t] = u;
    }
    ResidualReport rep{Rational(0), Rational(0), Rational(0), Rational(0), false};
    for (std::size_t t = 0; t < nt; ++t) {
        rep.max_ir_violation = std::max(rep.max_ir_violation, Rational(-utility[t]));
        rep.max_npt_violation = std::max(rep.max_npt_violation, Rational(-table.pay[t]));
        for (std::size_t t2 = 0; t2 < nt; ++t2) {
            if (t2 == t) continue;
            Rational dev = -table.pay[t2];
            Rational mono = 0;
            for (std::size_t i = 0; i < k; ++i) {
                dev += ts.type(t)[i] * table.alloc[t2][i];
                mono += (ts.type(t)[i] - ts.type(t2)[i]) *
                        (table.alloc[t][i] - table.alloc[t2][i]);
            }
            rep.max_ic_violation = std::max(rep.max_ic_violation, Rational(dev - utility[t]));
            rep.max_monotone_violation = std::max(rep.max_monotone_violation, Rational(-mono));
        }
    }
    rep.passes = rep.max_ic_violation <= tol && rep.max_ir_violation <= tol &&
                 rep.max_monotone_violation <= tol;
    return rep;
}

Rational mechanism_revenue(const MechanismTable& table, const TypeSpace& ts, const Rational& tol) {
    if (!validate(table, ts, tol).passes)
        throw Error(ErrorKind::ShapeMismatch, "mechanism fails validation at the given tolerance");
    Rational rev = 0;
    for (std::size_t t = 0; t < ts.num_types(); ++t) rev += ts.mass()[t] * table.pay[t];
    return rev;
}

namespace {

// Candidate prices for a subset: every achievable total value of that subset.
std::vector<Rational> subset_price_candidates(const ProductDist& p, unsigned subset) {
    std::set<Rational> sums{Rational(0)};
    for (std::size_t i = 0; i < p.k(); ++i) {
        if (!(subset & (1u << i))) continue;
        std::set<Rational> next;
        for (const auto& s : sums)
            for (const auto& val : p.items[i].support()) next.insert(s + val);
        sums = std::move(next);
    }
    return {sums.begin(), sums.end()};
}

}  // namespace

Rational menu_revenue(const ProductDist& p, const std::vector<MenuEntry>& menu,
                      std::size_t max_types) {
    for (const auto& e : menu) {
        if (e.alloc.size() != p.k()) throw Error(ErrorKind::BadMenu, "allocation width mismatch");
        if (e.price < 0) throw Error(ErrorKind::BadMenu, "negative price");
        for (const auto& a : e.alloc)
            if (a < 0 || a > 1) throw Error(ErrorKind::BadMenu, "allocation outside [0,1]");
    }
    TypeSpace ts = TypeSpace::build(p, max_types);
    Rational rev = 0;
    for (std::size_t t = 0; t < ts.num_types(); ++t) {
        Rational best_u = 0, best_price = 0;  // the empty entry
        for (const auto& e : menu) {
            Rational u = -e.price;
            for (std::size_t i = 0; i < p.k(); ++i) u += ts.type(t)[i] * e.alloc[i];
            if (u > best_u || (u == best_u && e.price > best_price)) {
                best_u = u;
                best_price = e.price;
            }
        }
        rev += ts.mass()[t] * best_price;
    }
    return rev;
}

DeterministicResult best_deterministic(const ProductDist& p, std::size_t max_types) {
    const std::size_t k = p.k();
    if (k > 3) throw Error(ErrorKind::KTooLarge, "deterministic enumeration limited to k <= 3");
    TypeSpace ts = TypeSpace::build(p, max_types);
    const unsigned nsub = (1u << k) - 1;

    std::vector<std::vector<Rational>> cands(nsub + 1);
    double combos = 1;
    for (unsigned s = 1; s <= nsub; ++s) {
        cands[s] = subset_price_candidates(p, s);
        combos *= static_cast<double>(cands[s].size() + 1);  // +1 for "not offered"
    }
    if (combos > 5e6)
        throw Error(ErrorKind::KTooLarge, "deterministic menu enumeration too large");

    // Precompute each type's value for each subset.
    const std::size_t nt = ts.num_types();
    std::vector<std::vector<Rational>> subset_val(nsub + 1, std::vector<Rational>(nt, Rational(0)));
    for (unsigned s = 1; s <= nsub; ++s)
        for (std::size_t t = 0; t < nt; ++t)
            for (std::size_t i = 0; i < k; ++i)
                if (s & (1u << i)) subset_val[s][t] += ts.type(t)[i];

    // choice[s] in [0, |cands[s]|]; the last value means "not offered".
    std::vector<std::size_t> choice(nsub + 1, 0);
    DeterministicResult best;
    best.value = -1;
    for (;;) {
        Rational rev = 0;
        for (std::size_t t = 0; t < nt; ++t) {
            Rational best_u = 0, best_price = 0;
            for (unsigned s = 1; s <= nsub; ++s) {
                if (choice[s] == cands[s].size()) continue;
                const Rational& price = cands[s][choice[s]];
                const Rational u = subset_val[s][t] - price;
                if (u > best_u || (u == best_u && price > best_price)) {
                    best_u = u;
                    best_price = price;
                }
            }
            rev += ts.mass()[t] * best_price;
        }
        if (rev > best.value) {
            best.value = rev;
            best.menu.clear();
            for (unsigned s = 1; s <= nsub; ++s) {
                if (choice[s] == cands[s].size()) continue;
                MenuEntry e;
                e.alloc.assign(k, Rational(0));
                for (std::size_t i = 0; i < k; ++i)
                    if (s & (1u << i)) e.alloc[i] = 1;
                e.price = cands[s][choice[s]];
                best.menu.push_back(std::move(e));
            }
        }
        unsigned s = 1;
        for (; s <= nsub; ++s) {
            if (++choice[s] <= cands[s].size()) break;
            choice[s] = 0;
        }
        if (s > nsub) break;
    }
    return best;
}

std::vector<MenuEntry> table_to_menu(const MechanismTable& table) {
    std::set<std::pair<std::vector<Rational>, Rational>> seen;
    std::vector<MenuEntry> menu;
    for (std::size_t t = 0; t < table.pay.size(); ++t) {
        auto key = std::make_pair(table.alloc[t], table.pay[t]);
        if (seen.insert(key).second) menu.push_back({table.alloc[t], table.pay[t]});
    }
    return menu;
}

}  // namespace mechlab
