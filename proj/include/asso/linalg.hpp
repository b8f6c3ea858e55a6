#ifndef ASSO_LINALG_HPP
#define ASSO_LINALG_HPP

#include "rational.hpp"

#include <optional>

namespace asso {

struct LinearSolution {
    RatVector particular;
    std::vector<RatVector> kernel;
};

/** Reduced row echelon form in place; returns pivot columns. */
inline std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(RatMatrix m) { return rref(m).size(); }

inline std::size_t rank(const std::vector<RatVector>& rows) {
    if (rows.empty()) return 0;
    return rank(RatMatrix::from_rows(rows));
}

inline std::size_t rank(const std::vector<IntVec>& rows) {
    if (rows.empty()) return 0;
    return rank(RatMatrix::from_int(rows));
}

/**
 * Solves A x = b. Returns nullopt when inconsistent, otherwise a particular
 * solution (free variables set to zero) and a kernel basis.
 */
inline std::optional<LinearSolution> solve_linear(const RatMatrix& a, const RatVector& b) {
    if (a.rows() != b.size()) throw std::invalid_argument("solve_linear: rows of A differ from size of b");
    const std::size_t n = a.cols();
    RatMatrix aug(a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;

    LinearSolution sol;
    sol.particular.assign(n, Rational(0));
    std::vector<bool> is_pivot(n, false);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        is_pivot[pivots[r]] = true;
        sol.particular[pivots[r]] = aug(r, n);
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RatVector k(n, Rational(0));
        k[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) k[pivots[r]] = -aug(r, f);
        sol.kernel.push_back(std::move(k));
    }
    return sol;
}

/** Inverse of a square matrix, or nullopt if singular. */
inline std::optional<RatMatrix> inverse(const RatMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = a.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

/** Matrix whose columns are the given vectors. */
inline RatMatrix from_columns(const std::vector<IntVec>& cols) {
    if (cols.empty()) return RatMatrix();
    RatMatrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < cols[j].size(); ++i) m(i, j) = Rational(cols[j][i]);
    return m;
}

/** Dimension of the affine hull of a nonempty point set. */
inline std::size_t affine_dimension(const std::vector<RatVector>& pts) {
    if (pts.size() <= 1) return 0;
    std::vector<RatVector> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        RatVector d(pts[i].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
        diffs.push_back(std::move(d));
    }
    return rank(diffs);
}

} // namespace asso

#endif
