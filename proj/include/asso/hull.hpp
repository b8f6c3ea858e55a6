#ifndef ASSO_HULL_HPP
#define ASSO_HULL_HPP

#include "linalg.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace asso {

/** Fixed-size bitset over point indices. */
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    void set(std::size_t i) { w_[i / 64] |= std::uint64_t(1) << (i % 64); }
    bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
        return c;
    }
    IndexSet operator&(const IndexSet& o) const {
        IndexSet r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
        return r;
    }
    std::size_t intersection_count(const IndexSet& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) c += static_cast<std::size_t>(std::popcount(w_[i] & o.w_[i]));
        return c;
    }
    bool contains(const IndexSet& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if ((o.w_[i] & ~w_[i]) != 0) return false;
        return true;
    }
    std::vector<std::size_t> elements() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < n_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }
    bool operator==(const IndexSet& o) const { return w_ == o.w_; }
    bool operator<(const IndexSet& o) const { return w_ < o.w_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct HullFacet {
    RatVector normal;  ///< facet is normal . x <= offset
    Rational offset;
    std::vector<std::size_t> vertices;
};

struct HullResult {
    std::size_t dimension = 0;
    std::vector<HullFacet> facets;
};

namespace detail {

using ZVec = std::vector<Integer>;

inline void make_primitive(ZVec& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, abs(x));
    if (g > 1)
        for (auto& x : v) x /= g;
}

inline Integer zdot(const ZVec& a, const ZVec& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

struct Ray {
    ZVec h;
    IndexSet zeros;
};

} // namespace detail

/**
 * Facets of the convex hull of `points` inside its affine hull, by the
 * double description method on the homogenized cone.
 */
inline HullResult hull_facets(const std::vector<RatVector>& points) {
    using namespace detail;
    if (points.empty()) throw std::invalid_argument("hull_facets: no points");
    const std::size_t npts = points.size();
    const std::size_t amb = points.front().size();
    for (const auto& p : points)
        if (p.size() != amb) throw std::invalid_argument("hull_facets: dimension mismatch");

    HullResult out;
    std::vector<RatVector> diffs;
    for (std::size_t i = 1; i < npts; ++i) {
        RatVector d(amb);
        for (std::size_t j = 0; j < amb; ++j) d[j] = points[i][j] - points[0][j];
        diffs.push_back(std::move(d));
    }
    std::vector<std::size_t> coords;
    if (!diffs.empty()) {
        RatMatrix m = RatMatrix::from_rows(diffs);
        coords = rref(m);
    }
    const std::size_t k = coords.size();
    out.dimension = k;
    if (k == 0) return out;

    // homogenized integer points (1, y) restricted to pivot coordinates
    std::vector<ZVec> q(npts, ZVec(k + 1));
    for (std::size_t i = 0; i < npts; ++i) {
        Integer l = 1;
        for (std::size_t c : coords) l = lcm(l, denominator(points[i][c]));
        q[i][0] = l;
        for (std::size_t j = 0; j < k; ++j) q[i][j + 1] = numerator(Rational(points[i][coords[j]] * l));
    }

    // initial simplex
    std::vector<std::size_t> basis;
    std::vector<RatVector> rows;
    for (std::size_t i = 0; i < npts && basis.size() < k + 1; ++i) {
        RatVector r(k + 1);
        for (std::size_t j = 0; j <= k; ++j) r[j] = Rational(q[i][j]);
        rows.push_back(r);
        if (rank(rows) == rows.size()) {
            basis.push_back(i);
        } else {
            rows.pop_back();
        }
    }
    auto inv = inverse(RatMatrix::from_rows(rows));
    if (!inv) throw std::logic_error("hull_facets: initial simplex is singular");

    std::vector<bool> done(npts, false);
    for (std::size_t b : basis) done[b] = true;
    std::vector<Ray> rays;
    for (std::size_t j = 0; j <= k; ++j) {
        Integer l = 1;
        for (std::size_t i = 0; i <= k; ++i) l = lcm(l, denominator((*inv)(i, j)));
        Ray r{ZVec(k + 1), IndexSet(npts)};
        for (std::size_t i = 0; i <= k; ++i) r.h[i] = numerator(Rational((*inv)(i, j) * l));
        make_primitive(r.h);
        for (std::size_t t = 0; t <= k; ++t)
            if (t != j) r.zeros.set(basis[t]);
        rays.push_back(std::move(r));
    }

    for (std::size_t p = 0; p < npts; ++p) {
        if (done[p]) continue;
        done[p] = true;
        std::vector<Integer> val(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            val[r] = zdot(rays[r].h, q[p]);
            if (val[r] > 0) pos.push_back(r);
            else if (val[r] < 0) neg.push_back(r);
            else rays[r].zeros.set(p);
        }
        if (neg.empty()) continue;
        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (val[r] >= 0) next.push_back(rays[r]);
        for (std::size_t a : pos) {
            for (std::size_t b : neg) {
                IndexSet common = rays[a].zeros & rays[b].zeros;
                if (common.count() + 1 < k) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == a || r == b) continue;
                    if (rays[r].zeros.contains(common)) adjacent = false;
                }
                if (!adjacent) continue;
                Ray nr{ZVec(k + 1), common};
                for (std::size_t i = 0; i <= k; ++i) nr.h[i] = val[a] * rays[b].h[i] - val[b] * rays[a].h[i];
                make_primitive(nr.h);
                nr.zeros.set(p);
                next.push_back(std::move(nr));
            }
        }
        rays = std::move(next);
    }

    for (const auto& r : rays) {
        // h0 + a.y >= 0  <=>  (-a).y <= h0
        HullFacet f;
        f.normal.assign(amb, Rational(0));
        for (std::size_t j = 0; j < k; ++j) f.normal[coords[j]] = Rational(-r.h[j + 1]);
        f.offset = Rational(r.h[0]);
        f.vertices = r.zeros.elements();
        out.facets.push_back(std::move(f));
    }
    std::sort(out.facets.begin(), out.facets.end(),
              [](const HullFacet& a, const HullFacet& b) { return a.vertices < b.vertices; });
    return out;
}

} // namespace asso

#endif
