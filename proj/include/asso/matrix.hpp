#ifndef ASSO_MATRIX_HPP
#define ASSO_MATRIX_HPP

#include "rational.hpp"

#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace asso {

/** Skew-symmetrizable integer matrix with its positive symmetrizer. */
struct ExchangeMatrix {
    IntMatrix b;
    IntVec d;

    std::size_t size() const { return b.size(); }
    Int operator()(std::size_t i, std::size_t j) const { return b[i][j]; }
    bool operator==(const ExchangeMatrix& o) const { return b == o.b; }
};

inline void check_square(const IntMatrix& b) {
    for (const auto& row : b)
        if (row.size() != b.size()) throw std::invalid_argument("exchange matrix must be square");
}

/**
 * Minimal positive integer symmetrizer d with b_ij d_j = -b_ji d_i,
 * or nullopt when none exists.
 */
inline std::optional<IntVec> find_symmetrizer(const IntMatrix& b) {
    check_square(b);
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (b[i][i] != 0) return std::nullopt;
        for (std::size_t j = 0; j < n; ++j) {
            if ((b[i][j] == 0) != (b[j][i] == 0)) return std::nullopt;
            if (b[i][j] != 0 && sign(b[i][j]) == sign(b[j][i])) return std::nullopt;
        }
    }
    std::vector<Rational> d(n, Rational(0));
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (comp[root] >= 0) continue;
        d[root] = 1;
        comp[root] = ncomp;
        std::vector<std::size_t> stack{root};
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                if (b[i][j] == 0) continue;
                // b_ij d_j = -b_ji d_i
                Rational dj = Rational(-b[j][i]) * d[i] / Rational(b[i][j]);
                if (comp[j] < 0) {
                    comp[j] = ncomp;
                    d[j] = dj;
                    stack.push_back(j);
                } else if (d[j] != dj) {
                    return std::nullopt;
                }
            }
        }
        ++ncomp;
    }
    IntVec out(n);
    for (int c = 0; c < ncomp; ++c) {
        Integer l = 1;
        for (std::size_t i = 0; i < n; ++i)
            if (comp[i] == c) l = lcm(l, denominator(d[i]));
        Integer g = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (comp[i] == c) g = gcd(g, numerator(Rational(d[i] * l)));
        for (std::size_t i = 0; i < n; ++i)
            if (comp[i] == c) out[i] = static_cast<Int>(numerator(Rational(d[i] * l)) / g);
    }
    return out;
}

inline bool is_skew_symmetrizable_by(const IntMatrix& b, const IntVec& d) {
    if (d.size() != b.size()) return false;
    for (Int x : d)
        if (x <= 0) return false;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[i][j] * d[j] != -b[j][i] * d[i]) return false;
    return true;
}

inline ExchangeMatrix make_exchange_matrix(IntMatrix b) {
    check_square(b);
    auto d = find_symmetrizer(b);
    if (!d) throw std::invalid_argument("matrix is not skew-symmetrizable");
    return {std::move(b), *d};
}

inline ExchangeMatrix make_exchange_matrix(IntMatrix b, IntVec d) {
    check_square(b);
    if (!is_skew_symmetrizable_by(b, d)) throw std::invalid_argument("symmetrizer does not skew-symmetrize the matrix");
    return {std::move(b), std::move(d)};
}

inline IntMatrix mutate_matrix(const IntMatrix& b, std::size_t k) {
    const std::size_t n = b.size();
    if (k >= n) throw std::out_of_range("mutate_matrix: invalid slot");
    IntMatrix r(n, IntVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == k || j == k) r[i][j] = -b[i][j];
            else r[i][j] = b[i][j] + (std::abs(b[i][k]) * b[k][j] + b[i][k] * std::abs(b[k][j])) / 2;
        }
    return r;
}

inline ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, std::size_t k) {
    return {mutate_matrix(b.b, k), b.d};
}

/** -B^T, the exchange matrix of the dual algebra. */
inline IntMatrix dual_matrix(const IntMatrix& b) {
    const std::size_t n = b.size();
    IntMatrix r(n, IntVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[i][j] = -b[j][i];
    return r;
}

inline IntMatrix transpose(const IntMatrix& b) {
    if (b.empty()) return {};
    IntMatrix r(b.front().size(), IntVec(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b[i].size(); ++j) r[j][i] = b[i][j];
    return r;
}

inline ExchangeMatrix dual_matrix(const ExchangeMatrix& b) {
    // (-B^T) D' skew-symmetric for D' = D^{-1}, scaled to integers
    auto d = find_symmetrizer(dual_matrix(b.b));
    return {dual_matrix(b.b), *d};
}

/**
 * Coefficient mutation on exponent vectors: p[j] is the exponent vector of
 * the coefficient at slot j.
 */
inline std::vector<IntVec> mutate_coefficients(const std::vector<IntVec>& p, const IntMatrix& b, std::size_t k) {
    const std::size_t n = b.size();
    if (k >= n || p.size() != n) throw std::out_of_range("mutate_coefficients: invalid slot or tuple length");
    std::vector<IntVec> r(p);
    const IntVec& pk = p[k];
    for (std::size_t j = 0; j < n; ++j) {
        if (j == k) {
            r[j] = negate(pk);
            continue;
        }
        Int bkj = b[k][j];
        if (bkj == 0) continue;
        for (std::size_t i = 0; i < pk.size(); ++i) {
            if (bkj > 0 && pk[i] > 0) r[j][i] += bkj * pk[i];
            else if (bkj < 0 && pk[i] < 0) r[j][i] -= bkj * pk[i];
        }
    }
    return r;
}

inline IntMatrix cartan_companion(const IntMatrix& b) {
    const std::size_t n = b.size();
    IntMatrix a(n, IntVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = i == j ? 2 : -std::abs(b[i][j]);
    return a;
}

/** Acyclic: the quiver i -> j for b_ij > 0 has no oriented cycle. */
inline bool is_acyclic(const IntMatrix& b) {
    const std::size_t n = b.size();
    std::vector<int> indeg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (b[i][j] > 0) ++indeg[j];
    std::vector<std::size_t> q;
    for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0) q.push_back(i);
    std::size_t seen = 0;
    while (!q.empty()) {
        std::size_t i = q.back();
        q.pop_back();
        ++seen;
        for (std::size_t j = 0; j < n; ++j)
            if (b[i][j] > 0 && --indeg[j] == 0) q.push_back(j);
    }
    return seen == n;
}

/** Every row is entrywise >= 0 or entrywise <= 0. */
inline bool is_bipartite(const IntMatrix& b) {
    for (const auto& row : b)
        if (!is_zero_vector(row) && sign_of_coherent(row) == 0) return false;
    return true;
}

} // namespace asso

#endif
