#ifndef ASSO_UNIVERSAL_HPP
#define ASSO_UNIVERSAL_HPP

#include "hull.hpp"
#include "polytope.hpp"

namespace asso {

/** Extended exchange matrix: top block B, bottom block rows labeled by cluster variables. */
struct UniversalSeedMatrix {
    IntMatrix b;
    std::vector<IntVec> rows;    ///< rows[y][x] = exponent of p[y] in p_x
    std::vector<IntVec> labels;  ///< g-vector of the row's variable in the transposed algebra

    /** Coefficient p_x as an exponent vector over the p[y]. */
    std::vector<IntVec> columns() const {
        std::vector<IntVec> out(b.size(), IntVec(rows.size()));
        for (std::size_t y = 0; y < rows.size(); ++y)
            for (std::size_t x = 0; x < b.size(); ++x) out[x][y] = rows[y][x];
        return out;
    }
};

/** Rows are the g-vectors of all cluster variables of A_prin(B^T), in lexicographic order. */
inline UniversalSeedMatrix universal_matrix_reading(const IntMatrix& b, std::size_t seed_cap = default_seed_cap()) {
    ExchangeGraph t = enumerate_exchange_graph(transpose(b), seed_cap);
    return {b, t.variables, t.variables};
}

/** Repeatedly appends a unit row e_i and mutates at i along the word c w0(c), with c = s_1 ... s_n. */
inline UniversalSeedMatrix universal_matrix_sorting(const IntMatrix& b) {
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (b[i][j] < 0) throw std::invalid_argument("sorting construction needs nonnegative entries above the diagonal");
    IntMatrix a = cartan_companion(b);
    if (!is_finite_cartan(a)) throw std::invalid_argument("sorting construction needs a finite type matrix");
    RootSystem rs = enumerate_roots(a);
    std::vector<std::size_t> c(n);
    std::iota(c.begin(), c.end(), 0);
    std::vector<std::size_t> word = c;
    auto w0 = c_sorting_word(rs, c);
    word.insert(word.end(), w0.begin(), w0.end());

    IntMatrix ext = b;
    for (std::size_t i : word) {
        ext.push_back(unit_vector(n, i));
        IntMatrix next = ext;
        for (std::size_t r = 0; r < ext.size(); ++r)
            for (std::size_t j = 0; j < n; ++j) {
                if (r == i || j == i) next[r][j] = -ext[r][j];
                else next[r][j] = ext[r][j] + (std::abs(ext[r][i]) * ext[i][j] + ext[r][i] * std::abs(ext[i][j])) / 2;
            }
        ext = std::move(next);
    }
    UniversalSeedMatrix u;
    u.b.assign(ext.begin(), ext.begin() + static_cast<std::ptrdiff_t>(n));
    u.rows.assign(ext.begin() + static_cast<std::ptrdiff_t>(n), ext.end());
    return u;
}

/** Row multiset comparison. */
inline bool same_rows(std::vector<IntVec> a, std::vector<IntVec> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

/** u-vectors of every seed of one of the two lockstep algebras. */
struct UniversalGraph {
    bool dual = false;
    UniversalSeedMatrix initial;
    std::vector<std::vector<IntVec>> u;       ///< u[s][k]
    std::vector<std::vector<IntVec>> labels;  ///< labels[s][k] = row label of slot k's variable
};

/**
 * Mutates the universal coefficients over the exchange graph. With dual set,
 * works with B0 dual, whose universal rows come from A_prin(-B0).
 */
inline UniversalGraph enumerate_universal_graph(const ExchangeGraph& g, bool dual) {
    UniversalGraph ug;
    ug.dual = dual;
    IntMatrix b = dual ? dual_matrix(g.b0) : g.b0;
    ug.initial = universal_matrix_reading(b);
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    ug.u = propagate(
        g, 0, ug.initial.columns(),
        [&](const std::vector<IntVec>& p, std::size_t s, std::size_t k) {
            const auto& rec = dual ? g.seeds[s].dual : g.seeds[s].primal;
            return mutate_coefficients(p, rec.b, k);
        },
        [](const std::vector<IntVec>& p, const std::vector<std::size_t>& perm) { return permute_slots(p, perm); }, &bad);
    if (!bad.empty()) throw std::logic_error("universal coefficients depend on the mutation path");

    // the transposed algebra shares the exchange graph; its g-vectors name the rows
    auto aux = propagate(
        g, 0, initial_record(transpose(b)),
        [](const SeedRecord& r, std::size_t, std::size_t k) { return mutate_record(r, k); },
        [](const SeedRecord& r, const std::vector<std::size_t>& perm) { return permute_record(r, perm); }, &bad);
    if (!bad.empty()) throw std::logic_error("transposed algebra does not follow the exchange graph");
    for (const auto& r : aux) ug.labels.push_back(r.g);
    return ug;
}

inline std::size_t row_index(const UniversalSeedMatrix& m, const IntVec& label) {
    auto it = std::lower_bound(m.labels.begin(), m.labels.end(), label);
    if (it == m.labels.end() || *it != label) throw std::logic_error("unknown universal row label");
    return static_cast<std::size_t>(it - m.labels.begin());
}

struct HullStats {
    std::size_t ambient = 0, dimension = 0, vertices = 0, facets = 0;
    std::size_t min_vertices_per_facet = 0, max_vertices_per_facet = 0;
    std::size_t min_facets_per_vertex = 0, max_facets_per_vertex = 0;
};

inline HullStats hull_stats(const std::vector<RatVector>& pts, const HullResult& h) {
    HullStats st;
    st.ambient = pts.empty() ? 0 : pts.front().size();
    st.dimension = h.dimension;
    st.vertices = pts.size();
    st.facets = h.facets.size();
    std::vector<std::size_t> per_vertex(pts.size(), 0);
    bool first = true;
    for (const auto& f : h.facets) {
        std::size_t c = f.vertices.size();
        st.min_vertices_per_facet = first ? c : std::min(st.min_vertices_per_facet, c);
        st.max_vertices_per_facet = first ? c : std::max(st.max_vertices_per_facet, c);
        first = false;
        for (std::size_t v : f.vertices) ++per_vertex[v];
    }
    if (!per_vertex.empty()) {
        st.min_facets_per_vertex = *std::min_element(per_vertex.begin(), per_vertex.end());
        st.max_facets_per_vertex = *std::max_element(per_vertex.begin(), per_vertex.end());
    }
    return st;
}

struct UniversalAssociahedron {
    UniversalGraph graph;          ///< dual universal graph
    std::vector<RatVector> points; ///< per seed
    std::optional<HullResult> hull;
    std::optional<HullStats> stats;
};

/** Points sum_{x in S} F(x) u(B0 dual, S dual, x dual), optionally with hull statistics. */
inline UniversalAssociahedron build_universal_associahedron(const ExchangeGraph& g, const LiftFunction& f, bool with_hull = true) {
    UniversalAssociahedron ua;
    ua.graph = enumerate_universal_graph(g, true);
    const std::size_t m = ua.graph.initial.rows.size();
    for (std::size_t s = 0; s < g.seeds.size(); ++s) {
        RatVector p(m, Rational(0));
        for (std::size_t k = 0; k < g.rank(); ++k) {
            const Rational& fx = f(g.var[s][k]);
            const IntVec& u = ua.graph.u[s][k];
            for (std::size_t i = 0; i < m; ++i)
                if (u[i] != 0) p[i] += fx * u[i];
        }
        ua.points.push_back(std::move(p));
    }
    if (with_hull) {
        ua.hull = hull_facets(ua.points);
        ua.stats = hull_stats(ua.points, *ua.hull);
    }
    return ua;
}

/** c-vectors of one algebra re-rooted at seed `root`: rel[t][k] in the basis of root's cluster. */
inline std::vector<std::vector<IntVec>> rerooted_cvectors(const ExchangeGraph& g, std::size_t root, bool dual) {
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    auto out = propagate(
        g, root, identity_columns(g.rank()),
        [&](const std::vector<IntVec>& c, std::size_t s, std::size_t k) {
            return mutate_coefficients(c, dual ? g.seeds[s].dual.b : g.seeds[s].primal.b, k);
        },
        [](const std::vector<IntVec>& c, const std::vector<std::size_t>& perm) { return permute_slots(c, perm); }, &bad);
    if (!bad.empty()) throw std::logic_error("re-rooted c-vectors depend on the mutation path");
    return out;
}

/** Coordinates of `v` at the rows of seed `s`'s cluster, in slot order. */
inline IntVec restrict_to_seed(const UniversalGraph& ug, std::size_t s, const IntVec& v) {
    IntVec out;
    for (const auto& label : ug.labels[s]) out.push_back(v[row_index(ug.initial, label)]);
    return out;
}

inline RatVector restrict_to_seed(const UniversalGraph& ug, std::size_t s, const RatVector& v) {
    RatVector out;
    for (const auto& label : ug.labels[s]) out.push_back(v[row_index(ug.initial, label)]);
    return out;
}

struct ProjectionReport {
    std::size_t seeds_checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/**
 * For each seed S*, the universal vertices restricted to the coordinates of
 * S* dual equal, vertex by vertex and as a set, the associahedron of B*
 * computed from c-vectors re-rooted at S*.
 */
inline ProjectionReport projection_check(const UniversalAssociahedron& ua, const ExchangeGraph& g, const LiftFunction& f,
                                         unsigned threads = 1) {
    const std::size_t N = g.seeds.size(), n = g.rank();
    std::vector<std::string> fail(N);
    parallel_for(N, threads, [&](std::size_t root) {
        auto rel = rerooted_cvectors(g, root, true);
        std::vector<RatVector> proj, oracle;
        for (std::size_t t = 0; t < N; ++t) {
            RatVector q(n, Rational(0));
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t i = 0; i < n; ++i)
                    if (rel[t][k][i] != 0) q[i] += f(g.var[t][k]) * rel[t][k][i];
            RatVector pr = restrict_to_seed(ua.graph, root, ua.points[t]);
            if (pr != q && fail[root].empty()) fail[root] = "seed " + std::to_string(root) + ": projection of vertex " + std::to_string(t) + " differs";
            proj.push_back(std::move(pr));
            oracle.push_back(std::move(q));
        }
        std::sort(proj.begin(), proj.end());
        std::sort(oracle.begin(), oracle.end());
        if (proj != oracle && fail[root].empty()) fail[root] = "seed " + std::to_string(root) + ": projected vertex set differs";
    });
    ProjectionReport r;
    r.seeds_checked = N;
    for (auto& e : fail)
        if (!e.empty()) r.failures.push_back(std::move(e));
    return r;
}

/**
 * Setting p[y] = 1 outside the cluster of S* turns the universal
 * coefficients of every seed into principal coefficients re-rooted at S*.
 */
inline ProjectionReport coefficient_specialization_check(const ExchangeGraph& g, bool dual, unsigned threads = 1) {
    UniversalGraph ug = enumerate_universal_graph(g, dual);
    const std::size_t N = g.seeds.size(), n = g.rank();
    std::vector<std::string> fail(N);
    parallel_for(N, threads, [&](std::size_t root) {
        auto rel = rerooted_cvectors(g, root, dual);
        for (std::size_t t = 0; t < N && fail[root].empty(); ++t)
            for (std::size_t k = 0; k < n; ++k)
                if (restrict_to_seed(ug, root, ug.u[t][k]) != rel[t][k]) {
                    fail[root] = "seed " + std::to_string(root) + ": specialized coefficient at seed " + std::to_string(t) + " slot " +
                                 std::to_string(k) + " is not the principal c-vector";
                    break;
                }
    });
    ProjectionReport r;
    r.seeds_checked = N;
    for (auto& e : fail)
        if (!e.empty()) r.failures.push_back(std::move(e));
    return r;
}

struct UniversalBarycenterReport {
    RatVector barycenter;
    bool zero = false;
    bool projections_commute = false;  ///< projection of the barycenter is the barycenter of each projection
};

inline UniversalBarycenterReport universal_barycenter(const UniversalAssociahedron& ua, const ExchangeGraph& g) {
    UniversalBarycenterReport r;
    r.barycenter = barycenter(ua.points);
    r.zero = std::all_of(r.barycenter.begin(), r.barycenter.end(), [](const Rational& x) { return x.is_zero(); });
    r.projections_commute = true;
    for (std::size_t s = 0; s < g.seeds.size(); ++s) {
        std::vector<RatVector> proj;
        for (const auto& p : ua.points) proj.push_back(restrict_to_seed(ua.graph, s, p));
        if (barycenter(proj) != restrict_to_seed(ua.graph, s, r.barycenter)) r.projections_commute = false;
    }
    return r;
}

} // namespace asso

#endif
