#ifndef ASSO_LP_HPP
#define ASSO_LP_HPP

#include "rational.hpp"

#include <optional>

namespace asso {

enum class Relation { LessEq, GreaterEq, Equal, Less, Greater };

struct LinearConstraint {
    RatVector coeffs;
    Relation rel;
    Rational rhs;
};

struct LpResult {
    bool feasible = false;
    RatVector witness;
    /// Largest slack achieved on strict constraints (capped at 1).
    Rational margin;
};

inline bool satisfies(const LinearConstraint& c, const RatVector& x) {
    Rational v = dot(c.coeffs, x);
    switch (c.rel) {
    case Relation::LessEq: return v <= c.rhs;
    case Relation::GreaterEq: return v >= c.rhs;
    case Relation::Equal: return v == c.rhs;
    case Relation::Less: return v < c.rhs;
    case Relation::Greater: return v > c.rhs;
    }
    return false;
}

namespace detail {

// Dense tableau simplex with Bland's rule, maximizing.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_(rows, RatVector(cols + 1)), basis_(rows) {}

    Rational& at(std::size_t i, std::size_t j) { return t_[i][j]; }
    Rational& rhs(std::size_t i) { return t_[i][n_]; }
    std::size_t& basis(std::size_t i) { return basis_[i]; }
    std::size_t rows() const { return m_; }

    void pivot(std::size_t r, std::size_t c) {
        Rational inv = 1 / t_[r][c];
        for (auto& x : t_[r])
            if (!x.is_zero()) x *= inv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || t_[i][c].is_zero()) continue;
            Rational f = t_[i][c];
            for (std::size_t j = 0; j <= n_; ++j)
                if (!t_[r][j].is_zero()) t_[i][j] -= f * t_[r][j];
        }
        basis_[r] = c;
    }

    /** Returns false if unbounded. Columns with allowed[j] == false never enter. */
    bool maximize(const RatVector& cost, const std::vector<bool>& allowed) {
        for (;;) {
            std::size_t enter = n_;
            for (std::size_t j = 0; j < n_ && enter == n_; ++j) {
                if (!allowed[j]) continue;
                Rational red = cost[j];
                for (std::size_t i = 0; i < m_; ++i)
                    if (!t_[i][j].is_zero()) red -= cost[basis_[i]] * t_[i][j];
                if (red > 0) enter = j;
            }
            if (enter == n_) return true;
            std::size_t leave = m_;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_[i][enter] <= 0) continue;
                Rational ratio = t_[i][n_] / t_[i][enter];
                if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
    }

    Rational value(const RatVector& cost) const {
        Rational v = 0;
        for (std::size_t i = 0; i < m_; ++i) v += cost[basis_[i]] * t_[i][n_];
        return v;
    }

    RatVector solution() const {
        RatVector x(n_);
        for (std::size_t i = 0; i < m_; ++i) x[basis_[i]] = t_[i][n_];
        return x;
    }

    void drop_row(std::size_t r) {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --m_;
    }

private:
    std::size_t m_, n_;
    std::vector<RatVector> t_;
    std::vector<std::size_t> basis_;
};

} // namespace detail

/**
 * Exact feasibility of a system of linear constraints over free variables.
 * Strict inequalities get a shared slack t in [0,1] which is maximized.
 */
inline LpResult lp_feasible(const std::vector<LinearConstraint>& cons) {
    LpResult res;
    if (cons.empty()) return {true, {}, Rational(1)};
    const std::size_t d = cons.front().coeffs.size();
    for (const auto& c : cons)
        if (c.coeffs.size() != d) throw std::invalid_argument("lp_feasible: constraint dimension mismatch");

    bool strict = false;
    for (const auto& c : cons) strict = strict || c.rel == Relation::Less || c.rel == Relation::Greater;

    // columns: u (d), v (d), t (1 if strict), slacks, artificials
    const std::size_t m = cons.size() + (strict ? 1 : 0);
    std::size_t nslack = 0;
    for (const auto& c : cons) nslack += c.rel != Relation::Equal;
    if (strict) ++nslack;
    const std::size_t tcol = 2 * d;
    const std::size_t slack0 = 2 * d + (strict ? 1 : 0);
    const std::size_t art0 = slack0 + nslack;
    const std::size_t ncols = art0 + m;

    detail::Tableau tab(m, ncols);
    std::size_t s = slack0;
    for (std::size_t i = 0; i < m; ++i) {
        RatVector row(ncols);
        Rational b;
        if (i < cons.size()) {
            const auto& c = cons[i];
            for (std::size_t j = 0; j < d; ++j) {
                row[j] = c.coeffs[j];
                row[d + j] = -c.coeffs[j];
            }
            b = c.rhs;
            switch (c.rel) {
            case Relation::Less: row[tcol] = 1; [[fallthrough]];
            case Relation::LessEq: row[s++] = 1; break;
            case Relation::Greater: row[tcol] = -1; [[fallthrough]];
            case Relation::GreaterEq: row[s++] = -1; break;
            case Relation::Equal: break;
            }
        } else {
            row[tcol] = 1;
            row[s++] = 1;
            b = 1;
        }
        if (b < 0) {
            for (auto& x : row) x = -x;
            b = -b;
        }
        row[art0 + i] = 1;
        for (std::size_t j = 0; j < ncols; ++j) tab.at(i, j) = row[j];
        tab.rhs(i) = b;
        tab.basis(i) = art0 + i;
    }

    RatVector phase1(ncols);
    for (std::size_t j = art0; j < ncols; ++j) phase1[j] = -1;
    std::vector<bool> allowed(ncols, true);
    tab.maximize(phase1, allowed);
    if (tab.value(phase1) < 0) return res;

    // drive zero-level artificials out of the basis
    for (std::size_t i = 0; i < tab.rows();) {
        if (tab.basis(i) < art0) {
            ++i;
            continue;
        }
        std::size_t c = art0;
        for (std::size_t j = 0; j < art0 && c == art0; ++j)
            if (!tab.at(i, j).is_zero()) c = j;
        if (c == art0) {
            tab.drop_row(i);
        } else {
            tab.pivot(i, c);
            ++i;
        }
    }
    for (std::size_t j = art0; j < ncols; ++j) allowed[j] = false;

    if (strict) {
        RatVector phase2(ncols);
        phase2[tcol] = 1;
        tab.maximize(phase2, allowed);
        res.margin = tab.value(phase2);
        if (res.margin <= 0) return res;
    } else {
        res.margin = 1;
    }

    RatVector x = tab.solution();
    res.witness.assign(d, Rational(0));
    for (std::size_t j = 0; j < d; ++j) res.witness[j] = x[j] - x[d + j];
    for (const auto& c : cons)
        if (!satisfies(c, res.witness)) throw std::logic_error("lp_feasible: witness fails substitution check");
    res.feasible = true;
    return res;
}

} // namespace asso

#endif
