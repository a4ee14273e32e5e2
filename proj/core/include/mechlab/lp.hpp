#pragma once

#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "mechlab/error.hpp"
#include "mechlab/rational.hpp"

namespace mechlab::lp {

// maximize  objective . x   subject to   row . x <= rhs  for every row,  x >= 0
template <typename T>
struct Problem {
    std::size_t num_vars = 0;
    std::vector<std::vector<std::pair<std::size_t, T>>> rows;  // sparse coefficients
    std::vector<T> rhs;
    std::vector<T> objective;

    std::size_t add_row(std::vector<std::pair<std::size_t, T>> coeffs, T bound) {
        rows.push_back(std::move(coeffs));
        rhs.push_back(std::move(bound));
        return rows.size() - 1;
    }
};

enum class Status { Optimal, Infeasible, Unbounded };

template <typename T>
struct Solution {
    Status status = Status::Optimal;
    T value{};
    std::vector<T> x;     // primal solution, size num_vars
    std::vector<T> dual;  // one multiplier per row
    std::size_t iterations = 0;
};

namespace detail {

template <typename T>
struct Tol {
    static T pivot() { return T(0); }
    static T feas() { return T(0); }
};

template <>
struct Tol<double> {
    static double pivot() { return 1e-9; }
    static double feas() { return 1e-7; }
};

}  // namespace detail

// Dense-tableau two-phase primal simplex.  Entering column by largest reduced
// cost; after a run of degenerate pivots the rule switches to Bland's, which
// guarantees termination.  Exact arithmetic when T is Rational.
template <typename T>
class SimplexSolver {
  public:
    explicit SimplexSolver(const Problem<T>& prob, std::size_t max_iters = 2000000)
        : n_(prob.num_vars), m_(prob.rows.size()), max_iters_(max_iters) {
        const T zero(0);
        n_art_ = 0;
        std::vector<bool> needs_art(m_, false);
        for (std::size_t i = 0; i < m_; ++i)
            if (prob.rhs[i] < zero) {
                needs_art[i] = true;
                ++n_art_;
            }
        ncols_ = n_ + m_ + n_art_;
        tab_.assign(m_, std::vector<T>(ncols_ + 1, zero));
        basis_.resize(m_);
        art_start_ = n_ + m_;
        std::size_t art = art_start_;
        for (std::size_t i = 0; i < m_; ++i) {
            const T sign = needs_art[i] ? T(-1) : T(1);
            for (const auto& [j, v] : prob.rows[i]) tab_[i][j] += sign * v;
            tab_[i][n_ + i] = sign;  // slack
            tab_[i][ncols_] = sign * prob.rhs[i];
            if (needs_art[i]) {
                tab_[i][art] = T(1);
                basis_[i] = art++;
            } else {
                basis_[i] = n_ + i;
            }
        }
        obj_ = prob.objective;
        obj_.resize(n_, zero);
    }

    Solution<T> solve() {
        Solution<T> sol;
        if (n_art_ > 0) {
            // Phase 1: maximize minus the sum of artificials.
            std::vector<T> phase1(ncols_, T(0));
            for (std::size_t j = art_start_; j < ncols_; ++j) phase1[j] = T(-1);
            set_objective(phase1);
            run();
            if (objval_ < -detail::Tol<T>::feas()) {
                sol.status = Status::Infeasible;
                return sol;
            }
            evict_artificials();
        }
        std::vector<T> full = obj_;
        full.resize(ncols_, T(0));
        set_objective(full);
        phase2_ = true;
        if (!run()) {
            sol.status = Status::Unbounded;
            return sol;
        }
        return extract();
    }

    // Appends a constraint to an already-solved problem.  Only valid when the
    // initial solve needed no artificials (every original rhs >= 0).
    void add_row(const std::vector<std::pair<std::size_t, T>>& coeffs, T bound) {
        if (n_art_ > 0)
            throw Error(ErrorKind::SolverStall, "cannot extend a problem with artificials");
        // new slack column sits where the rhs used to be
        for (auto& row : tab_) {
            row.push_back(std::move(row[ncols_]));
            row[ncols_] = T(0);
        }
        objrow_.push_back(T(0));
        std::vector<T> row(ncols_ + 2, T(0));
        for (const auto& [j, v] : coeffs) row[j] += v;
        row[ncols_] = T(1);
        row[ncols_ + 1] = std::move(bound);
        ++ncols_;
        art_start_ = ncols_;
        // express the row in the current basis
        for (std::size_t i = 0; i < m_; ++i) {
            const T c = row[basis_[i]];
            if (c == T(0)) continue;
            for (std::size_t j = 0; j <= ncols_; ++j) row[j] -= c * tab_[i][j];
            row[basis_[i]] = T(0);
        }
        basis_.push_back(ncols_ - 1);
        tab_.push_back(std::move(row));
        ++m_;
    }

    // Restores primal feasibility by the dual simplex (the added rows may be
    // violated), then re-extracts the optimum.  Dual feasibility is already
    // given since the objective row was untouched.  The pivot budget caps the
    // warm-start effort; exhausting it throws SolverStall so the caller can
    // fall back to a cold solve (floating point offers no cycling guarantee).
    Solution<T> reoptimize(std::size_t pivot_budget = 0) {
        if (pivot_budget == 0) pivot_budget = max_iters_;
        const T ptol = detail::Tol<T>::pivot();
        const T ftol = detail::Tol<T>::feas();
        std::size_t used = 0;
        for (;; ++used, ++iters_) {
            std::size_t leave = m_;
            for (std::size_t i = 0; i < m_; ++i)
                if (tab_[i][ncols_] < -ftol &&
                    (leave == m_ || tab_[i][ncols_] < tab_[leave][ncols_]))
                    leave = i;
            if (leave == m_) break;
            if (used >= pivot_budget)
                throw Error(ErrorKind::SolverStall, "warm-start pivot budget exhausted");
            std::size_t enter = ncols_;
            T best_ratio{};
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (tab_[leave][j] >= -ptol) continue;
                T d = objrow_[j];
                if (d > T(0)) d = T(0);  // clip tolerance-level positives
                const T ratio = d / tab_[leave][j];
                if (enter == ncols_ || ratio < best_ratio) {
                    enter = j;
                    best_ratio = ratio;
                } else if constexpr (std::is_same_v<T, double>) {
                    // near-tie: prefer the larger pivot magnitude
                    if (ratio <= best_ratio + 1e-9 * (1 + best_ratio) &&
                        tab_[leave][j] < tab_[leave][enter])
                        enter = j;
                }
            }
            if (enter == ncols_)
                throw Error(ErrorKind::SolverStall, "added constraints are infeasible");
            pivot(leave, enter);
        }
        Solution<T> sol;
        if (!run(used < pivot_budget ? pivot_budget - used : 1)) {
            sol.status = Status::Unbounded;
            return sol;
        }
        return extract();
    }

  private:
    Solution<T> extract() {
        Solution<T> sol;
        sol.status = Status::Optimal;
        sol.iterations = iters_;
        sol.value = objval_;
        sol.x.assign(n_, T(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) sol.x[basis_[i]] = tab_[i][ncols_];
        sol.dual.assign(m_, T(0));
        for (std::size_t i = 0; i < m_; ++i) {
            T y = -objrow_[n_ + i];
            if constexpr (std::is_same_v<T, double>) {
                if (y < 0) y = 0;
            }
            sol.dual[i] = y;
        }
        return sol;
    }

    void set_objective(const std::vector<T>& c) {
        objrow_ = c;
        objrow_.resize(ncols_, T(0));
        objval_ = T(0);
        // price out current basics
        for (std::size_t i = 0; i < m_; ++i) {
            const T cb = objrow_[basis_[i]];
            if (cb == T(0)) continue;
            for (std::size_t j = 0; j <= ncols_; ++j) {
                if (j == ncols_)
                    objval_ += cb * tab_[i][ncols_];
                else
                    objrow_[j] -= cb * tab_[i][j];
            }
            objrow_[basis_[i]] = T(0);
        }
    }

    bool column_allowed(std::size_t j) const {
        return !(phase2_ && j >= art_start_);  // artificials are frozen in phase 2
    }

    // Returns false on unboundedness.
    bool run(std::size_t limit = 0) {
        if (limit == 0) limit = max_iters_;
        const T ptol = detail::Tol<T>::pivot();
        std::size_t degenerate_run = 0;
        bool bland = false;
        for (std::size_t iter = 0; iter < limit; ++iter, ++iters_) {
            // entering column
            std::size_t enter = ncols_;
            if (bland) {
                for (std::size_t j = 0; j < ncols_; ++j)
                    if (column_allowed(j) && objrow_[j] > ptol) {
                        enter = j;
                        break;
                    }
            } else {
                T best = ptol;
                for (std::size_t j = 0; j < ncols_; ++j)
                    if (column_allowed(j) && objrow_[j] > best) {
                        best = objrow_[j];
                        enter = j;
                    }
            }
            if (enter == ncols_) return true;  // optimal
            std::size_t leave = m_;
            T best_ratio{};
            if constexpr (std::is_same_v<T, double>) {
                if (bland) {
                    // anti-cycling mode: ties by smallest basis index
                    for (std::size_t i = 0; i < m_; ++i) {
                        if (tab_[i][enter] <= ptol) continue;
                        const double ratio = tab_[i][ncols_] / tab_[i][enter];
                        if (leave == m_ || ratio < best_ratio ||
                            (ratio == best_ratio && basis_[i] < basis_[leave])) {
                            leave = i;
                            best_ratio = ratio;
                        }
                    }
                    if (leave == m_) return false;  // unbounded
                    if (best_ratio == 0) {
                        ++degenerate_run;
                    } else {
                        degenerate_run = 0;
                        bland = false;
                    }
                    pivot(leave, enter);
                    continue;
                }
                // Harris-style two-pass ratio test: relax the limiting ratio
                // by a small feasibility slack, then take the row with the
                // largest pivot element among those within it.  Dividing by
                // tiny pivots is what destroys a dense tableau.
                double theta_cap = 0;
                bool any = false;
                for (std::size_t i = 0; i < m_; ++i) {
                    const double a = tab_[i][enter];
                    if (a <= ptol) continue;
                    double r = tab_[i][ncols_];
                    if (r < 0) r = 0;
                    const double cap = (r + 1e-9) / a;
                    if (!any || cap < theta_cap) theta_cap = cap;
                    any = true;
                }
                if (any) {
                    for (std::size_t i = 0; i < m_; ++i) {
                        const double a = tab_[i][enter];
                        if (a <= ptol) continue;
                        double r = tab_[i][ncols_];
                        if (r < 0) r = 0;
                        if (r / a <= theta_cap &&
                            (leave == m_ || a > tab_[leave][enter]))
                            leave = i;
                    }
                    best_ratio = tab_[leave][ncols_] / tab_[leave][enter];
                    if (best_ratio < 0) best_ratio = 0;
                }
            } else {
                // exact arithmetic: ties by smallest basis index (Bland)
                for (std::size_t i = 0; i < m_; ++i) {
                    if (tab_[i][enter] <= ptol) continue;
                    T ratio = tab_[i][ncols_] / tab_[i][enter];
                    if (leave == m_ || ratio < best_ratio ||
                        (ratio == best_ratio && basis_[i] < basis_[leave])) {
                        leave = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (leave == m_) return false;  // unbounded
            if (best_ratio == T(0)) {
                if (++degenerate_run > 64) bland = true;
            } else {
                degenerate_run = 0;
                bland = false;
            }
            pivot(leave, enter);
        }
        throw Error(ErrorKind::SolverStall, "simplex iteration cap reached");
    }

    void pivot(std::size_t row, std::size_t col) {
        auto& pr = tab_[row];
        const T piv = pr[col];
        for (std::size_t j = 0; j <= ncols_; ++j) pr[j] /= piv;
        pr[col] = T(1);
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row) continue;
            const T f = tab_[i][col];
            if (f == T(0)) continue;
            auto& ri = tab_[i];
            for (std::size_t j = 0; j <= ncols_; ++j) ri[j] -= f * pr[j];
            ri[col] = T(0);
        }
        const T f = objrow_[col];
        if (f != T(0)) {
            for (std::size_t j = 0; j < ncols_; ++j) objrow_[j] -= f * pr[j];
            objrow_[col] = T(0);
            objval_ += f * pr[ncols_];
        }
        basis_[row] = col;
    }

    // After phase 1, pivot basic artificials (at value zero) out of the basis
    // where possible; rows that stay artificial-basic are redundant.
    void evict_artificials() {
        const T ptol = detail::Tol<T>::pivot();
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < art_start_) continue;
            for (std::size_t j = 0; j < art_start_; ++j) {
                if (tab_[i][j] > ptol || tab_[i][j] < -ptol) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    std::size_t n_, m_, max_iters_;
    std::size_t n_art_ = 0, ncols_ = 0, art_start_ = 0, iters_ = 0;
    bool phase2_ = false;
    std::vector<std::vector<T>> tab_;
    std::vector<T> objrow_;
    std::vector<T> obj_;
    T objval_{};
    std::vector<std::size_t> basis_;
};

template <typename T>
Solution<T> solve(const Problem<T>& prob, std::size_t max_iters = 2000000) {
    return SimplexSolver<T>(prob, max_iters).solve();
}

}  // namespace mechlab::lp
