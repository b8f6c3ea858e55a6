#ifndef ASSO_SVG_HPP
#define ASSO_SVG_HPP

#include "rational.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace asso {

using Vec3 = std::array<double, 3>;
using Point2 = std::array<double, 2>;

namespace detail {

inline double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec3 normalized(const Vec3& v) {
    double l = std::sqrt(dot3(v, v));
    if (l == 0) throw std::invalid_argument("zero vector cannot be projected");
    return {v[0] / l, v[1] / l, v[2] / l};
}

inline Vec3 cross3(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

} // namespace detail

/** Stereographic projection from a pole of the unit sphere onto the plane orthogonal to it. */
class StereographicProjection {
public:
    explicit StereographicProjection(const Vec3& pole) : p_(detail::normalized(pole)) {
        // e1 along the projection of the coordinate axis least aligned with the pole
        std::size_t axis = 0;
        for (std::size_t i = 1; i < 3; ++i)
            if (std::abs(p_[i]) < std::abs(p_[axis])) axis = i;
        Vec3 a{0, 0, 0};
        a[axis] = 1;
        double t = detail::dot3(a, p_);
        e1_ = detail::normalized({a[0] - t * p_[0], a[1] - t * p_[1], a[2] - t * p_[2]});
        e2_ = detail::cross3(p_, e1_);
    }

    const Vec3& pole() const { return p_; }

    Point2 operator()(const Vec3& ray) const {
        Vec3 u = detail::normalized(ray);
        double denom = 1 - detail::dot3(u, p_);
        if (denom < 1e-12) throw std::invalid_argument("pole coincides with a ray");
        return {detail::dot3(u, e1_) / denom, detail::dot3(u, e2_) / denom};
    }

private:
    Vec3 p_, e1_, e2_;
};

struct SvgOptions {
    Vec3 pole{-1, -1, -1};
    double size = 600;
    int precision = 12;
    double tolerance = 1e-6;
    bool labels = true;
};

namespace detail {

struct ArcSampler {
    const StereographicProjection& proj;
    Vec3 a, b;

    Point2 at(double t) const {
        return proj({(1 - t) * a[0] + t * b[0], (1 - t) * a[1] + t * b[1], (1 - t) * a[2] + t * b[2]});
    }
    Point2 derivative(double t) const {
        const double h = 1e-7;
        double lo = std::max(0.0, t - h), hi = std::min(1.0, t + h);
        Point2 p = at(lo), q = at(hi);
        return {(q[0] - p[0]) / (hi - lo), (q[1] - p[1]) / (hi - lo)};
    }
};

inline Point2 bezier(const std::array<Point2, 4>& c, double t) {
    double s = 1 - t;
    Point2 out{};
    for (int i = 0; i < 2; ++i)
        out[i] = s * s * s * c[0][i] + 3 * s * s * t * c[1][i] + 3 * s * t * t * c[2][i] + t * t * t * c[3][i];
    return out;
}

inline void fit_arc(const ArcSampler& arc, double t0, double t1, double tol, int depth, std::vector<std::array<Point2, 4>>& out) {
    Point2 p0 = arc.at(t0), p3 = arc.at(t1);
    Point2 d0 = arc.derivative(t0), d3 = arc.derivative(t1);
    double dt = (t1 - t0) / 3;
    std::array<Point2, 4> c{p0, Point2{p0[0] + d0[0] * dt, p0[1] + d0[1] * dt}, Point2{p3[0] - d3[0] * dt, p3[1] - d3[1] * dt}, p3};
    double err = 0;
    for (double u : {0.25, 0.5, 0.75}) {
        Point2 m = arc.at(t0 + u * (t1 - t0)), z = bezier(c, u);
        err = std::max(err, std::hypot(m[0] - z[0], m[1] - z[1]));
    }
    if (err <= tol || depth >= 24) {
        out.push_back(c);
        return;
    }
    double mid = (t0 + t1) / 2;
    fit_arc(arc, t0, mid, tol, depth + 1, out);
    fit_arc(arc, mid, t1, tol, depth + 1, out);
}

} // namespace detail

/**
 * SVG drawing of a 3-dimensional fan: rays as labeled points, 2-cones as the
 * projected great-circle arcs approximated by cubic segments.
 */
inline std::string stereographic_svg(const std::vector<IntVec>& rays, const std::vector<std::pair<std::size_t, std::size_t>>& cones,
                                     const SvgOptions& opt = {}) {
    for (const auto& r : rays)
        if (r.size() != 3) throw std::invalid_argument("stereographic_svg needs rays in dimension 3");
    StereographicProjection proj(opt.pole);
    auto to3 = [](const IntVec& r) { return Vec3{double(r[0]), double(r[1]), double(r[2])}; };

    std::vector<Point2> pts;
    for (const auto& r : rays) pts.push_back(proj(to3(r)));
    std::vector<std::vector<std::array<Point2, 4>>> arcs;
    for (auto [i, j] : cones) {
        Vec3 a = detail::normalized(to3(rays[i])), b = detail::normalized(to3(rays[j]));
        for (int s = 0; s <= 64; ++s) {
            double t = s / 64.0;
            Vec3 m{(1 - t) * a[0] + t * b[0], (1 - t) * a[1] + t * b[1], (1 - t) * a[2] + t * b[2]};
            proj(m);
        }
        std::vector<std::array<Point2, 4>> segs;
        detail::fit_arc({proj, a, b}, 0, 1, opt.tolerance, 0, segs);
        arcs.push_back(std::move(segs));
    }

    double minx = std::numeric_limits<double>::infinity(), miny = minx, maxx = -minx, maxy = -minx;
    auto grow = [&](const Point2& p) {
        minx = std::min(minx, p[0]);
        maxx = std::max(maxx, p[0]);
        miny = std::min(miny, p[1]);
        maxy = std::max(maxy, p[1]);
    };
    for (const auto& p : pts) grow(p);
    for (const auto& segs : arcs)
        for (const auto& c : segs)
            for (const auto& p : c) grow(p);
    if (pts.empty()) minx = miny = -1, maxx = maxy = 1;
    double span = std::max({maxx - minx, maxy - miny, 1e-9});
    double margin = 0.08 * span;
    double scale = opt.size / (span + 2 * margin);
    // svg y axis points down
    auto X = [&](const Point2& p) { return (p[0] - minx + margin) * scale; };
    auto Y = [&](const Point2& p) { return (maxy - p[1] + margin) * scale; };

    std::ostringstream os;
    os << std::setprecision(opt.precision);
    double w = (maxx - minx + 2 * margin) * scale, h = (maxy - miny + 2 * margin) * scale;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
       << "\">\n";
    os << "<g fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n";
    for (const auto& segs : arcs) {
        os << "<path d=\"M " << X(segs.front()[0]) << " " << Y(segs.front()[0]);
        for (const auto& c : segs)
            os << " C " << X(c[1]) << " " << Y(c[1]) << " " << X(c[2]) << " " << Y(c[2]) << " " << X(c[3]) << " " << Y(c[3]);
        os << "\"/>\n";
    }
    os << "</g>\n<g fill=\"black\" font-family=\"sans-serif\" font-size=\"10\">\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        os << "<circle cx=\"" << X(pts[i]) << "\" cy=\"" << Y(pts[i]) << "\" r=\"3\"/>\n";
        if (opt.labels) {
            os << "<text x=\"" << X(pts[i]) + 4 << "\" y=\"" << Y(pts[i]) - 4 << "\">(";
            for (std::size_t k = 0; k < 3; ++k) os << (k ? "," : "") << rays[i][k];
            os << ")</text>\n";
        }
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

} // namespace asso

#endif
