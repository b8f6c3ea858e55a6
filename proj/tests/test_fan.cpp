#include "asso/builtins.hpp"
#include "asso/fan.hpp"
#include "asso/rootsystem.hpp"
#include "asso/svg.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace asso;

namespace {

ExchangeGraph graph(const std::string& name) { return enumerate_exchange_graph(*builtin_matrix(name)); }

// solid angle of the cone over three rays (Van Oosterom and Strackee)
double solid_angle(const IntVec& a, const IntVec& b, const IntVec& c) {
    auto norm = [](const IntVec& v) { return std::sqrt(double(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])); };
    auto dotd = [](const IntVec& u, const IntVec& v) { return double(u[0] * v[0] + u[1] * v[1] + u[2] * v[2]); };
    double det = double(a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]));
    double na = norm(a), nb = norm(b), nc = norm(c);
    double den = na * nb * nc + dotd(a, b) * nc + dotd(a, c) * nb + dotd(b, c) * na;
    return 2 * std::abs(std::atan2(std::abs(det), den));
}

std::vector<std::pair<std::size_t, std::size_t>> arcs(const ExchangeGraph& g) {
    std::set<std::pair<std::size_t, std::size_t>> s;
    for (const auto& cone : g.var)
        for (std::size_t i = 0; i < cone.size(); ++i)
            for (std::size_t j = i + 1; j < cone.size(); ++j) s.insert(std::minmax(cone[i], cone[j]));
    return {s.begin(), s.end()};
}

std::size_t count(const std::string& text, const std::string& what) {
    std::size_t n = 0;
    for (auto p = text.find(what); p != std::string::npos; p = text.find(what, p + 1)) ++n;
    return n;
}

} // namespace

TEST(EdgeDependence, A3CyclicInitialSeedSlotOne) {
    auto g = graph("a3-cyclic");
    auto f = fan_data(g);
    auto d = edge_dependence(f, 0, 0);
    ASSERT_TRUE(d.failure.empty()) << d.failure;
    EXPECT_NE(d.eps, 0);
    // g(x) + g(x') = sum delta_y g(y), substituted exactly
    IntVec lhs = g.seeds[0].primal.g[0];
    const IntVec& other = f.rays[f.cones[g.neighbor(0, 0)][g.neighbor_slot(0, 0)]];
    for (std::size_t i = 0; i < 3; ++i) lhs[i] += other[i];
    RatVector rhs(3, Rational(0));
    for (std::size_t y = 0; y < 3; ++y) {
        EXPECT_TRUE(d.delta[y] == 0 || d.delta[y] == 1);
        for (std::size_t i = 0; i < 3; ++i) rhs[i] += d.delta[y] * g.seeds[0].primal.g[y][i];
    }
    EXPECT_EQ(to_rational(lhs), rhs);
}

TEST(EdgeDependence, CoefficientsFollowTheExchangeMatrixEntries) {
    for (const auto& name : {"a3", "a4", "a3-cyclic"}) {
        auto g = graph(name);
        auto cert = verify_complete_fan(g, 2);
        ASSERT_TRUE(cert.ok()) << name;
        for (const auto& d : cert.dependences)
            for (const auto& x : d.delta) EXPECT_TRUE(x == 0 || x == 1) << name;
    }
    auto c3 = verify_complete_fan(graph("c3-cyclic"), 2);
    bool two = false;
    for (const auto& d : c3.dependences)
        for (const auto& x : d.delta) two = two || x == 2;
    EXPECT_TRUE(two);
}

TEST(CompleteFan, CertifiedOnBuiltins) {
    for (const auto& name : acceptance_builtins()) {
        auto g = graph(name);
        auto cert = verify_complete_fan(g, 3);
        EXPECT_TRUE(cert.ok()) << name << ": " << (cert.failures.empty() ? "" : cert.failures[0]);
        EXPECT_EQ(cert.dependences.size(), g.seeds.size() * g.rank()) << name;
        EXPECT_EQ(cert.random_hits, cert.random_directions) << name;
        for (const auto& d : cert.dependences) EXPECT_FALSE(d.degenerate) << name;
        for (std::size_t s = 1; s < g.seeds.size(); ++s) EXPECT_TRUE(cert.disjoint_from_base[s]) << name;
    }
}

TEST(CompleteFan, SphericalAreaOfRankThreeFansIsFourPi) {
    for (const auto& name : {"a3", "a3-cyclic", "c3-cyclic"}) {
        auto g = graph(name);
        double total = 0;
        for (const auto& cone : g.var) total += solid_angle(g.variables[cone[0]], g.variables[cone[1]], g.variables[cone[2]]);
        EXPECT_NEAR(total, 4 * std::acos(-1.0), 1e-9) << name;
    }
}

TEST(CompleteFan, NegatedRayFails) {
    auto f = fan_data(graph("a3-cyclic"));
    f.rays[3] = negate(f.rays[3]);
    auto cert = verify_complete_fan(f);
    EXPECT_FALSE(cert.ok());
}

TEST(CompleteFan, ThreadCountDoesNotChangeTheCertificate) {
    auto g = graph("d4");
    auto a = verify_complete_fan(g, 1), b = verify_complete_fan(g, 4);
    EXPECT_EQ(a.random_hits, b.random_hits);
    EXPECT_EQ(a.disjoint_from_base, b.disjoint_from_base);
    ASSERT_EQ(a.dependences.size(), b.dependences.size());
    for (std::size_t i = 0; i < a.dependences.size(); ++i) EXPECT_EQ(a.dependences[i].delta, b.dependences[i].delta);
}

TEST(Coarsening, WallNormalsAreCVectors) {
    for (const auto& name : {"a3-cyclic", "c3-cyclic", "b2", "d4"}) {
        IntMatrix b = *builtin_matrix(name);
        auto g = enumerate_exchange_graph(b);
        auto r = check_coarsening(g);
        EXPECT_TRUE(r.ok()) << name;
        auto ft = is_finite_type(b);
        EXPECT_EQ(r.distinct_normals, enumerate_roots(cartan_companion(ft.witness)).positive.size()) << name;
    }
}

TEST(Coarsening, InitialWallsAreSimpleRoots) {
    auto g = graph("c3-cyclic");
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(g.seeds[0].dual.c[k], unit_vector(3, k));
}

TEST(Stereographic, ClosedFormOfAnAxisRay) {
    StereographicProjection p({-1, -1, -1});
    auto q = p({1, 0, 0});
    // |u - <u,p>p| / (1 - <u,p>) with <u,p> = -1/sqrt 3
    double up = -1 / std::sqrt(3.0);
    double expected = std::sqrt(1 - up * up) / (1 - up);
    EXPECT_NEAR(std::hypot(q[0], q[1]), expected, 1e-12);
    EXPECT_TRUE(std::isfinite(q[0]) && std::isfinite(q[1]));
}

TEST(Stereographic, PoleIsRejectedAndAntipodeGoesToTheOrigin) {
    StereographicProjection p({-1, -1, -1});
    EXPECT_THROW(p({-2, -2, -2}), std::invalid_argument);
    auto o = p({1, 1, 1});
    EXPECT_NEAR(o[0], 0, 1e-12);
    EXPECT_NEAR(o[1], 0, 1e-12);
    EXPECT_THROW(stereographic_svg({{-1, -1, -1}}, {}), std::invalid_argument);
}

TEST(Stereographic, OrthantFanIsSymmetric) {
    std::vector<IntVec> rays = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    StereographicProjection p({-1, -1, -1});
    std::vector<Point2> q;
    for (const auto& r : rays) q.push_back(p({double(r[0]), double(r[1]), double(r[2])}));
    for (std::size_t i = 0; i < 3; ++i) {
        const auto &a = q[i], &b = q[(i + 1) % 3];
        EXPECT_NEAR(std::hypot(a[0], a[1]), std::hypot(q[0][0], q[0][1]), 1e-12);
        EXPECT_NEAR(std::hypot(a[0] - b[0], a[1] - b[1]), std::hypot(q[0][0] - q[1][0], q[0][1] - q[1][1]), 1e-12);
    }
    auto svg = stereographic_svg(rays, {{0, 1}, {1, 2}, {0, 2}});
    EXPECT_EQ(count(svg, "<path"), 3u);
    EXPECT_EQ(count(svg, "<circle"), 3u);
    EXPECT_NE(svg.find("(1,0,0)"), std::string::npos);
}

TEST(Stereographic, FanDrawingAndDimensionCheck) {
    auto g = graph("a3-cyclic");
    auto svg = stereographic_svg(g.variables, arcs(g));
    EXPECT_EQ(count(svg, "<circle"), 9u);
    EXPECT_EQ(count(svg, "<path"), arcs(g).size());
    EXPECT_THROW(stereographic_svg({{1, 0}}, {}), std::invalid_argument);
}
