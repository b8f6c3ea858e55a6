#ifndef ASSO_RATIONAL_HPP
#define ASSO_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace asso {

/** Exact rational, always in lowest terms with positive denominator. */
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using Int = std::int64_t;
using IntVec = std::vector<Int>;
using IntMatrix = std::vector<IntVec>;
using RatVector = std::vector<Rational>;

/** Dense row-major rational matrix. */
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RatMatrix from_rows(const std::vector<RatVector>& rows) {
        std::size_t c = rows.empty() ? 0 : rows.front().size();
        RatMatrix m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static RatMatrix from_int(const IntMatrix& rows) {
        std::size_t c = rows.empty() ? 0 : rows.front().size();
        RatMatrix m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational(rows[i][j]);
        }
        return m;
    }

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RatVector row(std::size_t i) const {
        return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RatVector operator*(const RatVector& v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
        RatVector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!is_zero((*this)(i, j))) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    RatMatrix operator*(const RatMatrix& o) const {
        if (o.rows_ != cols_) throw std::invalid_argument("matrix product dimension mismatch");
        RatMatrix out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (is_zero((*this)(i, k))) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += (*this)(i, k) * o(k, j);
            }
        return out;
    }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    static bool is_zero(const Rational& r) { return r.is_zero(); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

inline RatVector to_rational(const IntVec& v) {
    RatVector out;
    out.reserve(v.size());
    for (Int x : v) out.emplace_back(x);
    return out;
}

inline Rational dot(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const IntVec& a, const RatVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) s += b[i] * a[i];
    return s;
}

inline Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline int sign(const Rational& r) { return r.sign(); }
inline int sign(Int x) { return (x > 0) - (x < 0); }

/** "p/q" or "p". */
inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational parse_rational(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer q(s.substr(slash + 1));
        if (q.is_zero()) throw std::invalid_argument("zero denominator");
        return Rational(Integer(s.substr(0, slash)), q);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational number: '" + s + "'");
    }
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline bool is_zero_vector(const IntVec& v) {
    for (Int x : v)
        if (x != 0) return false;
    return true;
}

/** +1 if all entries >= 0, -1 if all <= 0, 0 otherwise (or if zero). */
inline int sign_of_coherent(const IntVec& v) {
    bool pos = false, neg = false;
    for (Int x : v) {
        pos = pos || x > 0;
        neg = neg || x < 0;
    }
    if (pos && !neg) return 1;
    if (neg && !pos) return -1;
    return 0;
}

inline IntVec negate(IntVec v) {
    for (Int& x : v) x = -x;
    return v;
}

} // namespace asso

#endif
