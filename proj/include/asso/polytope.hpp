#ifndef ASSO_POLYTOPE_HPP
#define ASSO_POLYTOPE_HPP

#include "lp.hpp"
#include "rootsystem.hpp"
#include "submodular.hpp"

#include <functional>
#include <iomanip>
#include <sstream>

namespace asso {

struct Halfspace {
    IntVec normal;  ///< g-vector
    Rational rhs;   ///< F(x)
};

/** Vertex and halfspace description with its incidence. */
struct PolytopeRep {
    std::vector<RatVector> vertices;          ///< per seed, coweight coordinates
    std::vector<Halfspace> halfspaces;        ///< per variable
    std::vector<std::vector<std::size_t>> incidence;  ///< incidence[s] = tight halfspaces, sorted
    std::size_t dim() const { return halfspaces.empty() ? 0 : halfspaces.front().normal.size(); }
};

struct IncidenceError : std::logic_error {
    using std::logic_error::logic_error;
};

/** p(S) = sum_{x in S} F(x) c(x dual in S dual); halfspaces <g(x), v> <= F(x). */
inline PolytopeRep build_associahedron(const ExchangeGraph& g, const LiftFunction& f, unsigned threads = 1) {
    const std::size_t n = g.rank(), N = g.seeds.size(), nv = g.variables.size();
    if (f.values.size() != nv) throw std::invalid_argument("lift function does not cover the cluster variables");
    PolytopeRep p;
    for (std::size_t v = 0; v < nv; ++v) p.halfspaces.push_back({g.variables[v], f(v)});
    p.vertices.assign(N, RatVector(n, Rational(0)));
    p.incidence.resize(N);
    std::vector<std::string> err(N);
    parallel_for(N, threads, [&](std::size_t s) {
        RatVector& pt = p.vertices[s];
        for (std::size_t k = 0; k < n; ++k) {
            const Rational& fx = f(g.var[s][k]);
            const IntVec& c = g.seeds[s].dual.c[k];
            for (std::size_t i = 0; i < n; ++i)
                if (c[i] != 0) pt[i] += fx * c[i];
        }
        for (std::size_t v = 0; v < nv; ++v) {
            Rational val = dot(g.variables[v], pt);
            bool member = g.slot_of(s, v) < n;
            if (member) {
                if (val != f(v)) err[s] = "vertex of seed " + std::to_string(s) + " is off the hyperplane of a cluster variable";
                p.incidence[s].push_back(v);
            } else if (val >= f(v)) {
                err[s] = "vertex of seed " + std::to_string(s) + " violates the strict inequality of variable " + std::to_string(v);
            }
        }
    });
    for (const auto& e : err)
        if (!e.empty()) throw IncidenceError(e);
    return p;
}

/** The graph with an edge between vertices sharing n-1 tight halfspaces equals the exchange graph. */
inline bool incidence_graph_matches(const PolytopeRep& p, const ExchangeGraph& g) {
    const std::size_t N = p.vertices.size(), n = g.rank();
    std::set<std::pair<std::size_t, std::size_t>> poly, exch;
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = a + 1; b < N; ++b) {
            std::vector<std::size_t> common;
            std::set_intersection(p.incidence[a].begin(), p.incidence[a].end(), p.incidence[b].begin(), p.incidence[b].end(),
                                  std::back_inserter(common));
            if (common.size() + 1 == n) poly.emplace(a, b);
        }
    for (std::size_t s = 0; s < N; ++s)
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t t = g.neighbor(s, k);
            exch.emplace(std::min(s, t), std::max(s, t));
        }
    return poly == exch;
}

struct EdgeVectorReport {
    std::size_t edges = 0;
    std::size_t green_agreements = 0;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/**
 * p(S') - p(S) = lambda c_k with lambda < 0 and lambda equal to the
 * matching exchange sum minus F(x) + F(x'); also checks that green edges are
 * exactly those increasing <-sum omega, p>.
 */
inline EdgeVectorReport edge_vector_check(const PolytopeRep& p, const ExchangeGraph& g, const LiftFunction& f) {
    EdgeVectorReport r;
    const std::size_t n = g.rank();
    for (std::size_t s = 0; s < g.seeds.size(); ++s) {
        const auto& sd = g.seeds[s];
        for (std::size_t k = 0; k < n; ++k) {
            ++r.edges;
            std::size_t t = g.neighbor(s, k), kk = g.neighbor_slot(s, k);
            const IntVec& c = sd.dual.c[k];
            RatVector diff(n);
            for (std::size_t i = 0; i < n; ++i) diff[i] = p.vertices[t][i] - p.vertices[s][i];
            int eps = exchange_sign(sd.primal, k);
            Rational side = 0;
            for (std::size_t y = 0; y < n; ++y) {
                Int coef = eps * sd.primal.b[y][k];
                if (coef > 0) side += f(g.var[s][y]) * coef;
            }
            Rational lambda = side - f(g.var[s][k]) - f(g.var[t][kk]);
            bool ok = lambda < 0;
            for (std::size_t i = 0; i < n && ok; ++i) ok = diff[i] == lambda * c[i];
            if (!ok) r.violations.push_back({s, k, "edge vector is not the predicted negative multiple of the dual c-vector"});
            Rational height = 0;
            for (const auto& x : diff) height -= x;
            bool green = sign_of_coherent(c) > 0;
            if ((height > 0) == green && !height.is_zero()) ++r.green_agreements;
            else r.violations.push_back({s, k, "green orientation disagrees with the linear direction"});
        }
    }
    return r;
}

inline RatVector barycenter(const std::vector<RatVector>& pts) {
    if (pts.empty()) throw std::invalid_argument("barycenter of an empty set");
    RatVector b(pts.front().size(), Rational(0));
    for (const auto& p : pts)
        for (std::size_t i = 0; i < b.size(); ++i) b[i] += p[i];
    for (auto& x : b) x /= static_cast<long>(pts.size());
    return b;
}

inline RatVector barycenter(const PolytopeRep& p) { return barycenter(p.vertices); }

/** Zonotope sum_c gamma_c [0, c] over a centrally symmetric c-vector set, halved. */
struct ZonotopeRep {
    std::vector<IntVec> generators;
    std::vector<Rational> gamma;

    /** h(g) = 1/2 sum_{<g,c> > 0} gamma_c <g,c>. */
    Rational rhs(const RatVector& g) const {
        Rational h = 0;
        for (std::size_t i = 0; i < generators.size(); ++i) {
            Rational v = dot(generators[i], g);
            if (v > 0) h += gamma[i] * v;
        }
        return h / 2;
    }
    Rational rhs(const IntVec& g) const { return rhs(to_rational(g)); }
};

inline ZonotopeRep build_zonotope(const std::vector<IntVec>& cvectors, std::vector<Rational> gamma = {}) {
    if (gamma.empty()) gamma.assign(cvectors.size(), Rational(1));
    if (gamma.size() != cvectors.size()) throw std::invalid_argument("one multiplicity per c-vector is required");
    for (const auto& x : gamma)
        if (x <= 0) throw std::invalid_argument("zonotope multiplicities must be positive");
    return {cvectors, std::move(gamma)};
}

struct GammaFeasibility {
    bool feasible = false;
    bool symmetric = false;
    std::vector<IntVec> cvectors;
    std::vector<Rational> gamma;  ///< witness when feasible
    /// opposite g-vectors with different F values; these rule out any symmetric solution
    struct OppositePair {
        std::size_t x, y;
        IntVec gx, gy;
        Rational fx, fy;
    };
    std::vector<OppositePair> opposite_conflicts;
};

/** Positive gamma with h(g(x)) = F(x) for every cluster variable x. */
inline GammaFeasibility zonotope_gamma_feasibility(const ExchangeGraph& g, const LiftFunction& f, bool symmetric = false) {
    GammaFeasibility res;
    res.symmetric = symmetric;
    res.cvectors = g.dual_cvectors;
    const std::size_t m = res.cvectors.size();
    std::vector<LinearConstraint> cons;
    for (std::size_t v = 0; v < g.variables.size(); ++v) {
        RatVector row(m, Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
            Int d = dot(g.variables[v], res.cvectors[i]);
            if (d > 0) row[i] = Rational(d, 2);
        }
        cons.push_back({row, Relation::Equal, f(v)});
    }
    for (std::size_t i = 0; i < m; ++i) {
        RatVector e(m, Rational(0));
        e[i] = 1;
        cons.push_back({e, Relation::Greater, Rational(0)});
    }
    if (symmetric) {
        for (std::size_t i = 0; i < m; ++i) {
            auto it = std::lower_bound(res.cvectors.begin(), res.cvectors.end(), negate(res.cvectors[i]));
            if (it == res.cvectors.end() || *it != negate(res.cvectors[i])) continue;
            std::size_t j = static_cast<std::size_t>(it - res.cvectors.begin());
            if (j <= i) continue;
            RatVector e(m, Rational(0));
            e[i] = 1;
            e[j] = -1;
            cons.push_back({e, Relation::Equal, Rational(0)});
        }
    }
    for (std::size_t x = 0; x < g.variables.size(); ++x) {
        auto neg = negate(g.variables[x]);
        auto it = std::lower_bound(g.variables.begin(), g.variables.end(), neg);
        if (it == g.variables.end() || *it != neg) continue;
        std::size_t y = static_cast<std::size_t>(it - g.variables.begin());
        if (y > x && f(x) != f(y)) res.opposite_conflicts.push_back({x, y, g.variables[x], g.variables[y], f(x), f(y)});
    }
    auto lp = lp_feasible(cons);
    res.feasible = lp.feasible;
    if (lp.feasible) res.gamma = lp.witness;
    return res;
}

/** An inequality <normal, v> <= rhs. */
struct Inequality {
    RatVector normal;
    Rational rhs;
};

inline std::vector<Inequality> inequalities(const PolytopeRep& p) {
    std::vector<Inequality> out;
    for (const auto& h : p.halfspaces) out.push_back({to_rational(h.normal), h.rhs});
    return out;
}

/** Support function and dimension of the maximizing face. */
struct SupportOracle {
    std::size_t dim = 0;
    std::function<Rational(const RatVector&)> support;
    std::function<std::size_t(const RatVector&)> face_dim;
};

inline SupportOracle vertex_oracle(std::vector<RatVector> vertices) {
    auto shared = std::make_shared<std::vector<RatVector>>(std::move(vertices));
    SupportOracle o;
    o.dim = shared->front().size();
    o.support = [shared](const RatVector& g) {
        Rational best = dot(g, shared->front());
        for (const auto& v : *shared) best = std::max(best, dot(g, v));
        return best;
    };
    o.face_dim = [shared](const RatVector& g) {
        Rational best = dot(g, shared->front());
        for (const auto& v : *shared) best = std::max(best, dot(g, v));
        std::vector<RatVector> face;
        for (const auto& v : *shared)
            if (dot(g, v) == best) face.push_back(v);
        return affine_dimension(face);
    };
    return o;
}

/** Face of a zonotope in direction g: translate of the sum of generators orthogonal to g. */
inline SupportOracle zonotope_oracle(const ZonotopeRep& z) {
    SupportOracle o;
    o.dim = z.generators.empty() ? 0 : z.generators.front().size();
    o.support = [z](const RatVector& g) { return z.rhs(g); };
    o.face_dim = [z](const RatVector& g) {
        std::vector<IntVec> orth;
        for (const auto& c : z.generators)
            if (dot(c, g).is_zero()) orth.push_back(c);
        return orth.empty() ? std::size_t(0) : rank(orth);
    };
    return o;
}

/** The box |<omega_k, v>| <= F(x_k) over the initial cluster. */
inline std::vector<Inequality> parallelepiped(const ExchangeGraph& g, const LiftFunction& f) {
    std::vector<Inequality> out;
    const std::size_t n = g.rank();
    for (std::size_t k = 0; k < n; ++k) {
        Rational r = f(g.var[0][k]);
        RatVector e(n, Rational(0));
        e[k] = 1;
        out.push_back({e, r});
        e[k] = -1;
        out.push_back({e, r});
    }
    return out;
}

inline std::vector<RatVector> box_vertices(const std::vector<Inequality>& box) {
    const std::size_t n = box.size() / 2;
    std::vector<RatVector> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        RatVector v(n);
        for (std::size_t k = 0; k < n; ++k) v[k] = (mask >> k) & 1 ? box[2 * k].rhs : -box[2 * k + 1].rhs;
        out.push_back(std::move(v));
    }
    return out;
}

struct ContainmentReport {
    std::size_t checked = 0;
    std::vector<std::size_t> failed;  ///< indices into the inner inequality list
    std::vector<std::string> reasons;
    bool ok() const { return failed.empty(); }
};

/** Every inner inequality is a facet-defining inequality of the outer polytope. */
inline ContainmentReport containment_check(const std::vector<Inequality>& inner, const SupportOracle& outer) {
    ContainmentReport r;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        ++r.checked;
        const auto& q = inner[i];
        if (q.normal.size() != outer.dim) throw std::invalid_argument("containment_check: ambient dimensions differ");
        Rational h = outer.support(q.normal);
        if (h != q.rhs) {
            r.failed.push_back(i);
            r.reasons.push_back("right hand side " + to_string(q.rhs) + " differs from support value " + to_string(h));
            continue;
        }
        std::size_t d = outer.face_dim(q.normal);
        if (d + 1 != outer.dim) {
            r.failed.push_back(i);
            r.reasons.push_back("supported face has dimension " + std::to_string(d));
        }
    }
    return r;
}

struct PermutahedronReport {
    std::size_t checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/**
 * For acyclic B0: every facet normal lies in the orbit W omega_y of some
 * fundamental weight and its right hand side is the simple-coroot
 * coordinate of lambda at y.
 */
inline PermutahedronReport acyclic_permutahedron_check(const ExchangeGraph& g, const LiftFunction& f, const RatVector& lambda) {
    if (!is_acyclic(g.b0)) throw std::invalid_argument("permutahedron comparison needs an acyclic initial matrix");
    const std::size_t n = g.rank();
    IntMatrix a = cartan_companion(g.b0);
    RatVector mu = coweight_to_coroot(a, lambda);
    std::vector<std::set<IntVec>> orbits;
    for (std::size_t y = 0; y < n; ++y) orbits.push_back(weight_orbit(a, unit_vector(n, y)));
    PermutahedronReport r;
    for (std::size_t v = 0; v < g.variables.size(); ++v) {
        ++r.checked;
        bool found = false;
        for (std::size_t y = 0; y < n && !found; ++y) {
            if (!orbits[y].count(g.variables[v])) continue;
            found = true;
            if (f(v) != mu[y])
                r.failures.push_back("variable " + std::to_string(v) + ": right hand side " + to_string(f(v)) + " is not " + to_string(mu[y]));
        }
        if (!found) r.failures.push_back("variable " + std::to_string(v) + ": normal is not in a fundamental weight orbit");
    }
    return r;
}

/** JSON-ready halfspace records {"normal": [...], "rhs": "p/q"}. */
inline std::vector<std::pair<IntVec, std::string>> halfspace_records(const PolytopeRep& p) {
    std::vector<std::pair<IntVec, std::string>> out;
    for (const auto& h : p.halfspaces) out.emplace_back(h.normal, to_string(h.rhs));
    return out;
}

/**
 * OFF export of a 3-dimensional associahedron. Facet polygons are ordered
 * along the exchange graph, oriented outward and fan-triangulated from their
 * lowest-index vertex.
 */
inline std::string export_off(const PolytopeRep& p, const ExchangeGraph& g) {
    if (g.rank() != 3) throw std::invalid_argument("OFF export needs a 3-dimensional associahedron");
    const std::size_t N = p.vertices.size();
    std::vector<std::vector<std::size_t>> tris;
    for (std::size_t v = 0; v < p.halfspaces.size(); ++v) {
        std::vector<std::size_t> face;
        for (std::size_t s = 0; s < N; ++s)
            if (g.slot_of(s, v) < 3) face.push_back(s);
        // walk the cycle through edges that keep v
        std::vector<std::size_t> cyc{face.front()};
        std::set<std::size_t> used{face.front()};
        while (cyc.size() < face.size()) {
            std::size_t s = cyc.back(), next = N;
            for (std::size_t k = 0; k < 3 && next == N; ++k) {
                std::size_t t = g.neighbor(s, k);
                if (g.var[s][k] != v && !used.count(t) && g.slot_of(t, v) < 3) next = t;
            }
            if (next == N) throw std::logic_error("facet vertices do not form a cycle");
            cyc.push_back(next);
            used.insert(next);
        }
        auto lowest = std::min_element(cyc.begin(), cyc.end());
        std::rotate(cyc.begin(), lowest, cyc.end());
        // orientation: (v1 - v0) x (v2 - v0) must point along the outer normal
        const auto &a = p.vertices[cyc[0]], &b = p.vertices[cyc[1]], &c = p.vertices[cyc[2]];
        RatVector u{b[0] - a[0], b[1] - a[1], b[2] - a[2]}, w{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
        RatVector cr{u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
        if (dot(p.halfspaces[v].normal, cr) < 0) std::reverse(cyc.begin() + 1, cyc.end());
        for (std::size_t i = 1; i + 1 < cyc.size(); ++i) tris.push_back({cyc[0], cyc[i], cyc[i + 1]});
    }
    std::ostringstream os;
    os << "OFF\n" << N << " " << tris.size() << " 0\n" << std::setprecision(17);
    for (const auto& v : p.vertices) os << to_double(v[0]) << " " << to_double(v[1]) << " " << to_double(v[2]) << "\n";
    for (const auto& t : tris) os << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    return os.str();
}

} // namespace asso

#endif
