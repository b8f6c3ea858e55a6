#ifndef ASSO_TYPEA_HPP
#define ASSO_TYPEA_HPP

#include "polytope.hpp"

namespace asso {

/**
 * Labels 1..2n+6 run clockwise on a circle; odd labels are hollow vertices,
 * even labels solid ones. A diagonal is stored with its smaller label first.
 */
using Diagonal = std::pair<int, int>;

inline Diagonal make_diagonal(int a, int b) { return a < b ? Diagonal{a, b} : Diagonal{b, a}; }

/** Strictly between a and b going clockwise from a. */
inline bool between_cw(int a, int x, int b, int m) {
    int dx = ((x - a) % m + m) % m, db = ((b - a) % m + m) % m;
    return dx > 0 && dx < db;
}

/** Chords cross iff exactly one endpoint of one lies strictly inside the arc of the other. */
inline bool crosses(const Diagonal& p, const Diagonal& q) {
    if (p.first == q.first || p.first == q.second || p.second == q.first || p.second == q.second) return false;
    bool a = p.first < q.first && q.first < p.second;
    bool b = p.first < q.second && q.second < p.second;
    return a != b;
}

/** Triangulation of the hollow or solid (n+3)-gon. */
struct Triangulation {
    int n = 0;                        ///< rank; the polygon has n+3 vertices
    bool solid = false;
    std::vector<Diagonal> diagonals;  ///< slot order

    int circle() const { return 2 * n + 6; }
    /** Circle label of polygon vertex i in 0..n+2. */
    int label(int i) const { return 2 * i + (solid ? 2 : 1); }
    bool is_side(int a, int b) const {
        int d = ((b - a) % circle() + circle()) % circle();
        return d == 2 || d == circle() - 2;
    }
    bool has_segment(int a, int b) const {
        return is_side(a, b) || std::find(diagonals.begin(), diagonals.end(), make_diagonal(a, b)) != diagonals.end();
    }
    std::size_t slot(const Diagonal& d) const {
        auto it = std::find(diagonals.begin(), diagonals.end(), d);
        if (it == diagonals.end()) throw std::invalid_argument("diagonal is not in the triangulation");
        return static_cast<std::size_t>(it - diagonals.begin());
    }
    bool operator==(const Triangulation&) const = default;
    std::vector<Diagonal> sorted() const {
        auto d = diagonals;
        std::sort(d.begin(), d.end());
        return d;
    }
};

/** Apexes (c, d) of the quadrilateral around a diagonal (a, b): c on the clockwise arc a->b, d on b->a. */
inline std::pair<int, int> quadrilateral_apexes(const Triangulation& t, const Diagonal& dg) {
    const int a = dg.first, b = dg.second, m = t.circle();
    int c = 0, d = 0;
    for (int i = 0; i < t.n + 3; ++i) {
        int v = t.label(i);
        if (v == a || v == b || !t.has_segment(a, v) || !t.has_segment(v, b)) continue;
        (between_cw(a, v, b, m) ? c : d) = v;
    }
    if (c == 0 || d == 0) throw std::invalid_argument("diagonal does not bound two triangles");
    return {c, d};
}

/**
 * Shear sign of gamma against delta in t: +1 when gamma crosses the
 * quadrilateral through the sides (d,a) and (c,b), -1 through (a,c) and
 * (b,d), 0 in a corner or when gamma misses delta.
 */
inline int shear_sign(const Triangulation& t, const Diagonal& delta, const Diagonal& gamma) {
    if (!crosses(delta, gamma)) return 0;
    auto [c, d] = quadrilateral_apexes(t, delta);
    const int a = delta.first, b = delta.second;
    auto cr = [&](int x, int y) { return crosses(make_diagonal(x, y), gamma); };
    if (cr(d, a) && cr(c, b)) return 1;
    if (cr(a, c) && cr(b, d)) return -1;
    return 0;
}

/** b_{gamma delta} = 1 if gamma follows delta counter-clockwise around a triangle, -1 if it precedes it. */
inline IntMatrix b_of_triangulation(const Triangulation& t) {
    const std::size_t n = t.diagonals.size();
    IntMatrix b(n, IntVec(n, 0));
    const int m = t.circle();
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t d = 0; d < n; ++d) {
            if (g == d) continue;
            const Diagonal &x = t.diagonals[g], &y = t.diagonals[d];
            int common = 0;
            if (x.first == y.first || x.first == y.second) common = x.first;
            else if (x.second == y.first || x.second == y.second) common = x.second;
            if (common == 0) continue;
            int p = x.first == common ? x.second : x.first;
            int q = y.first == common ? y.second : y.first;
            if (!t.has_segment(p, q)) continue;
            // triangle (common, p, q): clockwise from `common`, does p come before q?
            bool p_first = between_cw(common, p, q, m);
            // counter-clockwise around the triangle, the side (common, q) follows (common, p) when p is clockwise-first
            b[g][d] = p_first ? -1 : 1;
        }
    return b;
}

/** Flips the diagonal at `slot`, keeping the slot. */
inline Triangulation flip(const Triangulation& t, std::size_t slot) {
    auto [c, d] = quadrilateral_apexes(t, t.diagonals[slot]);
    Triangulation out = t;
    out.diagonals[slot] = make_diagonal(c, d);
    return out;
}

inline std::vector<Diagonal> all_diagonals(int n, bool solid) {
    Triangulation t{n, solid, {}};
    std::vector<Diagonal> out;
    for (int i = 0; i < n + 3; ++i)
        for (int j = i + 2; j < n + 3; ++j)
            if (!(i == 0 && j == n + 2)) out.push_back(make_diagonal(t.label(i), t.label(j)));
    return out;
}

/** All triangulations of the (n+3)-gon, diagonals sorted. */
inline std::vector<Triangulation> all_triangulations(int n, bool solid) {
    auto diags = all_diagonals(n, solid);
    std::vector<Triangulation> out;
    std::vector<Diagonal> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (cur.size() == static_cast<std::size_t>(n)) {
            out.push_back({n, solid, cur});
            return;
        }
        if (i == diags.size()) return;
        bool ok = true;
        for (const auto& d : cur) ok = ok && !crosses(d, diags[i]);
        if (ok) {
            cur.push_back(diags[i]);
            rec(i + 1);
            cur.pop_back();
        }
        rec(i + 1);
    };
    rec(0);
    return out;
}

/** Rotation by one polygon vertex. */
inline Triangulation rotate(const Triangulation& t, int steps = 1) {
    Triangulation out = t;
    const int m = t.circle();
    for (auto& d : out.diagonals) {
        int a = ((d.first - 1 + 2 * steps) % m + m) % m + 1, b = ((d.second - 1 + 2 * steps) % m + m) % m + 1;
        d = make_diagonal(a, b);
    }
    return out;
}

/** One representative per rotation class, the lexicographically least sorted diagonal list. */
inline std::vector<Triangulation> triangulations_up_to_rotation(int n, bool solid = false) {
    std::set<std::vector<Diagonal>> seen;
    std::vector<Triangulation> out;
    for (const auto& t : all_triangulations(n, solid)) {
        std::vector<Diagonal> best = t.sorted();
        for (int r = 1; r < n + 3; ++r) best = std::min(best, rotate(t, r).sorted());
        if (seen.insert(best).second) out.push_back({n, solid, best});
    }
    return out;
}

/** Initial solid triangulation {(i-1)(j-1)} of a hollow reference triangulation, slot by slot. */
inline Triangulation initial_solid(const Triangulation& ref) {
    Triangulation t{ref.n, true, {}};
    const int m = ref.circle();
    auto prev = [m](int x) { return (x - 2 + m) % m + 1; };
    for (const auto& d : ref.diagonals) t.diagonals.push_back(make_diagonal(prev(d.first), prev(d.second)));
    return t;
}

inline IntVec shear_g_vector(const Triangulation& ref, const Diagonal& solid) {
    IntVec g;
    for (const auto& d : ref.diagonals) g.push_back(shear_sign(ref, d, solid));
    return g;
}

inline IntVec shear_c_vector(const Triangulation& ref, const Triangulation& t, const Diagonal& solid) {
    if (std::find(t.diagonals.begin(), t.diagonals.end(), solid) == t.diagonals.end())
        throw std::invalid_argument("solid diagonal is not in the solid triangulation");
    IntVec c;
    for (const auto& d : ref.diagonals) c.push_back(-shear_sign(t, solid, d));
    return c;
}

/** Half the number of solid diagonals crossing `solid`. */
inline Rational crossing_f(int n, const Diagonal& solid) {
    Int count = 0;
    for (const auto& d : all_diagonals(n, true)) count += crosses(d, solid);
    return Rational(count, 2);
}

struct TypeACase {
    Triangulation reference;
    std::size_t seeds = 0;
    std::vector<std::string> failures;
    bool flip_graph = false, vectors = false, lift = false, containments = false, barycenter = false;
    bool ok() const { return failures.empty(); }
};

struct TypeAReport {
    int n = 0;
    std::vector<TypeACase> cases;
    bool ok() const {
        return std::all_of(cases.begin(), cases.end(), [](const TypeACase& c) { return c.ok(); });
    }
};

inline std::size_t catalan(std::size_t k) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

/** Compares the triangulation model with the algebraic engine for one reference triangulation. */
inline TypeACase typeA_case(const Triangulation& ref) {
    TypeACase tc;
    tc.reference = ref;
    const int n = ref.n;
    auto fail = [&](const std::string& s) { tc.failures.push_back(s); };
    IntMatrix b0 = b_of_triangulation(ref);
    Triangulation start = initial_solid(ref);
    if (b_of_triangulation(start) != b0) fail("B of the initial solid triangulation differs from B of the reference");
    ExchangeGraph g = enumerate_exchange_graph(b0);
    tc.seeds = g.seeds.size();

    // (a) flip graph
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    auto tri = propagate(
        g, 0, start, [](const Triangulation& t, std::size_t, std::size_t k) { return flip(t, k); },
        [](const Triangulation& t, const std::vector<std::size_t>& perm) {
            Triangulation out = t;
            out.diagonals = permute_slots(t.diagonals, perm);
            return out;
        },
        &bad);
    std::set<std::vector<Diagonal>> distinct;
    for (const auto& t : tri) distinct.insert(t.sorted());
    tc.flip_graph = bad.empty() && distinct.size() == g.seeds.size() && g.seeds.size() == catalan(static_cast<std::size_t>(n) + 1);
    for (std::size_t s = 0; s < g.seeds.size() && tc.flip_graph; ++s)
        if (b_of_triangulation(tri[s]) != g.seeds[s].primal.b) tc.flip_graph = false;
    if (!tc.flip_graph) fail("flip graph and exchange graph differ");

    // (b) shear vectors, (c) crossing lift
    LiftFunction f = f_rho(g);
    tc.vectors = tc.lift = true;
    for (std::size_t s = 0; s < g.seeds.size(); ++s)
        for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
            const Diagonal& d = tri[s].diagonals[k];
            if (shear_g_vector(ref, d) != g.seeds[s].primal.g[k] || shear_c_vector(ref, tri[s], d) != g.seeds[s].primal.c[k])
                tc.vectors = false;
            if (crossing_f(n, d) != f(g.var[s][k])) tc.lift = false;
        }
    for (const auto& gv : g.variables)
        for (const auto& c : g.cvectors)
            if (std::abs(dot(gv, c)) > 1) tc.vectors = false;
    if (!tc.vectors) fail("shear coordinates differ from the engine g- or c-vectors");
    if (!tc.lift) fail("crossing-count lift differs from f_rho");

    // (d) parallelepiped, associahedron, zonotope
    PolytopeRep p = build_associahedron(g, f);
    ZonotopeRep z = build_zonotope(g.dual_cvectors);
    auto box = parallelepiped(g, f);
    tc.containments = containment_check(box, vertex_oracle(p.vertices)).ok() && containment_check(inequalities(p), zonotope_oracle(z)).ok();
    if (!tc.containments) fail("facet inequality containments fail");

    // (e) reflection through each reference diagonal balances every coordinate
    tc.barycenter = true;
    const int m = ref.circle();
    for (const auto& dr : ref.diagonals) {
        auto psi = [&](int x) { return ((dr.first + dr.second - x - 1) % m + m) % m + 1; };
        Rational coord = 0;
        for (const auto& t : tri) {
            Triangulation rt{n, true, {}};
            for (const auto& d : t.diagonals) rt.diagonals.push_back(make_diagonal(psi(d.first), psi(d.second)));
            for (const auto& d : t.diagonals) {
                Diagonal rd = make_diagonal(psi(d.first), psi(d.second));
                if (shear_sign(t, d, dr) != -shear_sign(rt, rd, dr) || crossing_f(n, d) != crossing_f(n, rd)) tc.barycenter = false;
                coord -= crossing_f(n, d) * shear_sign(t, d, dr);
            }
        }
        if (!coord.is_zero()) tc.barycenter = false;
    }
    RatVector bc = barycenter(p);
    if (!std::all_of(bc.begin(), bc.end(), [](const Rational& x) { return x.is_zero(); })) tc.barycenter = false;
    if (!tc.barycenter) fail("reflection argument for the barycenter fails");
    return tc;
}

inline TypeAReport typeA_crosscheck(int n, unsigned threads = 1) {
    if (n < 1) throw std::invalid_argument("type A crosscheck needs n >= 1");
    TypeAReport r;
    r.n = n;
    auto refs = triangulations_up_to_rotation(n);
    r.cases.resize(refs.size());
    parallel_for(refs.size(), threads, [&](std::size_t i) { r.cases[i] = typeA_case(refs[i]); });
    return r;
}

} // namespace asso

#endif
