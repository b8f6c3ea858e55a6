#ifndef ASSO_CLUSTER_HPP
#define ASSO_CLUSTER_HPP

#include "matrix.hpp"
#include "parallel.hpp"
#include "rootsystem.hpp"

#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace asso {

// Exchange relations follow the column convention: the exchange at slot k
// reads column k of B (entries b_yk), coefficients read row k.

struct SignCoherenceError : std::logic_error {
    using std::logic_error::logic_error;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Per-algebra data of a labeled seed; vectors are indexed by slot. */
struct SeedRecord {
    IntMatrix b;
    std::vector<IntVec> c;  ///< c-vectors, simple-root basis
    std::vector<IntVec> g;  ///< g-vectors, fundamental-weight basis
    std::vector<IntVec> d;  ///< denominator vectors

    bool operator==(const SeedRecord&) const = default;
};

using SeedKey = std::vector<IntVec>;

struct TrackedSeed {
    SeedRecord primal;
    SeedRecord dual;
    std::vector<std::size_t> word;

    std::size_t size() const { return primal.b.size(); }

    SeedKey key() const {
        SeedKey k = primal.g;
        std::sort(k.begin(), k.end());
        return k;
    }
};

inline std::vector<IntVec> identity_columns(std::size_t n, Int scale = 1) {
    std::vector<IntVec> cols(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) cols[i][i] = scale;
    return cols;
}

inline SeedRecord initial_record(const IntMatrix& b) {
    const std::size_t n = b.size();
    return {b, identity_columns(n), identity_columns(n), identity_columns(n, -1)};
}

inline TrackedSeed initial_tracked_seed(const IntMatrix& b0) {
    check_square(b0);
    return {initial_record(b0), initial_record(dual_matrix(b0)), {}};
}

/** g-vector of the new variable at slot k: -g_k + sum_{eps b_yk > 0} eps b_yk g_y. */
inline IntVec exchanged_g_vector(const IntMatrix& b, const std::vector<IntVec>& g, std::size_t k, int eps) {
    IntVec out = negate(g[k]);
    for (std::size_t y = 0; y < b.size(); ++y) {
        Int coef = eps * b[y][k];
        if (coef <= 0) continue;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += coef * g[y][i];
    }
    return out;
}

inline IntVec exchanged_d_vector(const IntMatrix& b, const std::vector<IntVec>& d, std::size_t k) {
    const std::size_t m = d[k].size();
    IntVec plus(m, 0), minus(m, 0);
    for (std::size_t y = 0; y < b.size(); ++y) {
        Int byk = b[y][k];
        if (byk > 0)
            for (std::size_t i = 0; i < m; ++i) plus[i] += byk * d[y][i];
        else if (byk < 0)
            for (std::size_t i = 0; i < m; ++i) minus[i] -= byk * d[y][i];
    }
    IntVec out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = -d[k][i] + std::max(plus[i], minus[i]);
    return out;
}

/** eps = +1 when the c-vector at k is negative, -1 when positive. */
inline int exchange_sign(const SeedRecord& r, std::size_t k) {
    int s = sign_of_coherent(r.c[k]);
    if (s == 0) throw SignCoherenceError("c-vector at slot " + std::to_string(k) + " is not sign-coherent");
    return s < 0 ? 1 : -1;
}

inline SeedRecord mutate_record(const SeedRecord& r, std::size_t k) {
    if (k >= r.b.size()) throw std::out_of_range("mutate: invalid slot");
    int eps = exchange_sign(r, k);
    SeedRecord out;
    out.b = mutate_matrix(r.b, k);
    out.c = mutate_coefficients(r.c, r.b, k);
    out.g = r.g;
    out.g[k] = exchanged_g_vector(r.b, r.g, k, eps);
    out.d = r.d;
    out.d[k] = exchanged_d_vector(r.b, r.d, k);
    return out;
}

inline TrackedSeed mutate_tracked_seed(const TrackedSeed& s, std::size_t k) {
    TrackedSeed t{mutate_record(s.primal, k), mutate_record(s.dual, k), s.word};
    if (sign_of_coherent(s.primal.c[k]) != sign_of_coherent(s.dual.c[k]))
        throw SignCoherenceError("primal and dual c-vectors at slot " + std::to_string(k) + " have different signs");
    if (!t.word.empty() && t.word.back() == k) t.word.pop_back();
    else t.word.push_back(k);
    return t;
}

/** Relabels slot j as slot perm[j]. */
template <class T>
std::vector<T> permute_slots(const std::vector<T>& v, const std::vector<std::size_t>& perm) {
    std::vector<T> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[perm[j]] = v[j];
    return out;
}

inline IntMatrix permute_matrix(const IntMatrix& b, const std::vector<std::size_t>& perm) {
    IntMatrix out(b.size(), IntVec(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[perm[i]][perm[j]] = b[i][j];
    return out;
}

inline SeedRecord permute_record(const SeedRecord& r, const std::vector<std::size_t>& perm) {
    return {permute_matrix(r.b, perm), permute_slots(r.c, perm), permute_slots(r.g, perm), permute_slots(r.d, perm)};
}

struct GraphEdge {
    std::size_t target = 0;
    std::vector<std::size_t> perm;  ///< slot j of mu_k(source) is slot perm[j] of target
};

struct ExchangeGraph {
    IntMatrix b0;
    std::vector<TrackedSeed> seeds;              ///< BFS order, seeds[0] is initial
    std::vector<std::vector<GraphEdge>> edges;   ///< edges[s][k]
    std::vector<IntVec> variables;               ///< sorted primal g-vectors
    std::vector<std::vector<std::size_t>> var;   ///< var[s][k] = variable id at slot k
    std::vector<IntVec> cvectors;                ///< C(B0), sorted
    std::vector<IntVec> dual_cvectors;           ///< C(B0 dual), sorted

    std::size_t rank() const { return b0.size(); }
    std::size_t neighbor(std::size_t s, std::size_t k) const { return edges[s][k].target; }
    std::size_t neighbor_slot(std::size_t s, std::size_t k) const { return edges[s][k].perm[k]; }

    std::size_t variable_id(const IntVec& g) const {
        auto it = std::lower_bound(variables.begin(), variables.end(), g);
        if (it == variables.end() || *it != g) throw std::out_of_range("unknown cluster variable");
        return static_cast<std::size_t>(it - variables.begin());
    }

    /** Slot of variable v in seed s, or rank() if absent. */
    std::size_t slot_of(std::size_t s, std::size_t v) const {
        for (std::size_t k = 0; k < var[s].size(); ++k)
            if (var[s][k] == v) return k;
        return rank();
    }
};

inline std::size_t default_seed_cap() {
    if (const char* env = std::getenv("ASSO_SEED_CAP")) {
        try {
            long long v = std::stoll(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return 200000;
}

/** Slot permutation taking the labeled seed `from` onto `to` (same cluster). */
inline std::vector<std::size_t> matching_permutation(const TrackedSeed& from, const TrackedSeed& to) {
    const std::size_t n = from.size();
    std::vector<std::size_t> perm(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (from.primal.g[j] == to.primal.g[i]) perm[j] = i;
    for (std::size_t p : perm)
        if (p == n) throw std::logic_error("seeds with equal keys do not share g-vectors");
    return perm;
}

/**
 * BFS over the exchange graph of A_prin(B0), tracking the dual algebra in
 * lockstep. Labeled seeds reached twice must agree up to slot relabeling.
 */
inline ExchangeGraph enumerate_exchange_graph(const IntMatrix& b0, std::size_t seed_cap = default_seed_cap()) {
    check_square(b0);
    const std::size_t n = b0.size();
    ExchangeGraph g;
    g.b0 = b0;
    std::map<SeedKey, std::size_t> index;
    g.seeds.push_back(initial_tracked_seed(b0));
    index[g.seeds[0].key()] = 0;
    for (std::size_t s = 0; s < g.seeds.size(); ++s) {
        g.edges.emplace_back(n);
        for (std::size_t k = 0; k < n; ++k) {
            TrackedSeed t = mutate_tracked_seed(g.seeds[s], k);
            SeedKey key = t.key();
            auto it = index.find(key);
            std::size_t target;
            if (it == index.end()) {
                if (g.seeds.size() >= seed_cap)
                    throw BudgetExceeded("seed cap of " + std::to_string(seed_cap) + " exceeded; B0 is probably not of finite type");
                target = g.seeds.size();
                index.emplace(std::move(key), target);
                g.seeds.push_back(std::move(t));
                std::vector<std::size_t> id(n);
                for (std::size_t j = 0; j < n; ++j) id[j] = j;
                g.edges[s][k] = {target, id};
            } else {
                target = it->second;
                auto perm = matching_permutation(t, g.seeds[target]);
                const TrackedSeed& u = g.seeds[target];
                if (permute_record(t.primal, perm) != u.primal || permute_record(t.dual, perm) != u.dual)
                    throw std::logic_error("labeled seeds with the same cluster carry different data");
                g.edges[s][k] = {target, std::move(perm)};
            }
        }
    }

    std::set<IntVec> vars, cs, dcs;
    for (const auto& s : g.seeds) {
        vars.insert(s.primal.g.begin(), s.primal.g.end());
        cs.insert(s.primal.c.begin(), s.primal.c.end());
        dcs.insert(s.dual.c.begin(), s.dual.c.end());
    }
    g.variables.assign(vars.begin(), vars.end());
    g.cvectors.assign(cs.begin(), cs.end());
    g.dual_cvectors.assign(dcs.begin(), dcs.end());
    for (const auto& s : g.seeds) {
        std::vector<std::size_t> ids(n);
        for (std::size_t k = 0; k < n; ++k) ids[k] = g.variable_id(s.primal.g[k]);
        g.var.push_back(std::move(ids));
    }
    // edge involution
    for (std::size_t s = 0; s < g.seeds.size(); ++s)
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t t = g.neighbor(s, k), kk = g.neighbor_slot(s, k);
            if (g.neighbor(t, kk) != s || g.neighbor_slot(t, kk) != k)
                throw std::logic_error("exchange graph edges are not involutive");
        }
    return g;
}

/**
 * Propagates slot-indexed data over the exchange graph from `root`.
 * mutate(state, s, k) returns the state of mu_k(seed s) in that seed's
 * labeling; permute(state, perm) relabels it. Every non-tree edge is
 * checked for consistency; the return value lists inconsistent edges.
 */
template <class State, class Mutate, class Permute>
std::vector<State> propagate(const ExchangeGraph& g, std::size_t root, State init, Mutate mutate, Permute permute,
                             std::vector<std::pair<std::size_t, std::size_t>>* inconsistent = nullptr) {
    const std::size_t N = g.seeds.size(), n = g.rank();
    std::vector<std::optional<State>> st(N);
    st[root] = std::move(init);
    std::deque<std::size_t> q{root};
    while (!q.empty()) {
        std::size_t s = q.front();
        q.pop_front();
        for (std::size_t k = 0; k < n; ++k) {
            const GraphEdge& e = g.edges[s][k];
            State next = permute(mutate(*st[s], s, k), e.perm);
            if (!st[e.target]) {
                st[e.target] = std::move(next);
                q.push_back(e.target);
            } else if (inconsistent && !(*st[e.target] == next)) {
                inconsistent->emplace_back(s, k);
            }
        }
    }
    std::vector<State> out;
    out.reserve(N);
    for (auto& x : st) out.push_back(std::move(*x));
    return out;
}

struct Violation {
    std::size_t seed;
    std::size_t slot;
    std::string what;
};

struct CheckReport {
    std::size_t checked = 0;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

inline CheckReport check_sign_coherence(const ExchangeGraph& g, unsigned threads = 1) {
    std::vector<std::vector<Violation>> per(g.seeds.size());
    parallel_for(g.seeds.size(), threads, [&](std::size_t s) {
        for (std::size_t k = 0; k < g.rank(); ++k) {
            if (sign_of_coherent(g.seeds[s].primal.c[k]) == 0) per[s].push_back({s, k, "primal c-vector mixed signs"});
            if (sign_of_coherent(g.seeds[s].dual.c[k]) == 0) per[s].push_back({s, k, "dual c-vector mixed signs"});
        }
    });
    CheckReport r;
    r.checked = 2 * g.seeds.size() * g.rank();
    for (auto& v : per) r.violations.insert(r.violations.end(), v.begin(), v.end());
    return r;
}

/** <g_i, c^vee_j> = delta_ij at every seed. */
inline CheckReport check_duality(const ExchangeGraph& g, unsigned threads = 1) {
    const std::size_t n = g.rank();
    std::vector<std::vector<Violation>> per(g.seeds.size());
    parallel_for(g.seeds.size(), threads, [&](std::size_t s) {
        const auto& sd = g.seeds[s];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (dot(sd.primal.g[i], sd.dual.c[j]) != (i == j ? 1 : 0))
                    per[s].push_back({s, i, "g-vectors and dual c-vectors are not dual bases"});
        if (sd.dual.b != dual_matrix(sd.primal.b)) per[s].push_back({s, n, "dual matrix is not -B^T"});
    });
    CheckReport r;
    r.checked = g.seeds.size();
    for (auto& v : per) r.violations.insert(r.violations.end(), v.begin(), v.end());
    return r;
}

/**
 * C(B0 dual) = -C(B0 dual); for acyclic B0 every c-vector is also a real
 * root of the Cartan companion (cyclic B0 rely on sign coherence only).
 */
inline CheckReport check_cvector_roots(const ExchangeGraph& g) {
    CheckReport r;
    std::set<IntVec> dual(g.dual_cvectors.begin(), g.dual_cvectors.end());
    for (const auto& c : g.dual_cvectors) {
        ++r.checked;
        if (!dual.count(negate(c))) r.violations.push_back({0, 0, "dual c-vector set is not centrally symmetric"});
    }
    if (!is_acyclic(g.b0)) return r;
    IntMatrix a = cartan_companion(g.b0);
    IntMatrix ad = cartan_companion(dual_matrix(g.b0));
    for (const auto& c : g.cvectors) {
        ++r.checked;
        if (!is_real_root(a, c)) r.violations.push_back({0, 0, "c-vector is not a real root"});
    }
    for (const auto& c : g.dual_cvectors) {
        ++r.checked;
        if (!is_real_root(ad, c)) r.violations.push_back({0, 0, "dual c-vector is not a real root"});
    }
    return r;
}

struct GreenOrientation {
    std::vector<std::vector<std::size_t>> out;  ///< out[s] = green successors
    std::vector<std::size_t> topological_order;
    bool acyclic = false;
    std::vector<std::size_t> sources, sinks;
};

/** Orient s -> mu_k(s) when the dual c-vector at k is positive. */
inline GreenOrientation green_orientation(const ExchangeGraph& g) {
    const std::size_t N = g.seeds.size();
    GreenOrientation o;
    o.out.resize(N);
    std::vector<std::size_t> indeg(N, 0);
    for (std::size_t s = 0; s < N; ++s)
        for (std::size_t k = 0; k < g.rank(); ++k)
            if (sign_of_coherent(g.seeds[s].dual.c[k]) > 0) {
                o.out[s].push_back(g.neighbor(s, k));
                ++indeg[g.neighbor(s, k)];
            }
    for (std::size_t s = 0; s < N; ++s) {
        if (indeg[s] == 0) o.sources.push_back(s);
        if (o.out[s].empty()) o.sinks.push_back(s);
    }
    std::deque<std::size_t> q(o.sources.begin(), o.sources.end());
    while (!q.empty()) {
        std::size_t s = q.front();
        q.pop_front();
        o.topological_order.push_back(s);
        for (std::size_t t : o.out[s])
            if (--indeg[t] == 0) q.push_back(t);
    }
    o.acyclic = o.topological_order.size() == N;
    return o;
}

struct FiniteTypeResult {
    bool finite = false;
    IntMatrix witness;                ///< mutation-equivalent matrix with finite-type Cartan companion
    std::vector<std::size_t> word;    ///< mutation word from B to the witness
    std::string type;                 ///< Cartan type of the witness
    std::string reason;
    std::size_t explored = 0;
};

/** BFS over the mutation class of B. */
inline FiniteTypeResult is_finite_type(const IntMatrix& b, std::size_t cap = 1000000) {
    check_square(b);
    FiniteTypeResult res;
    if (!find_symmetrizer(b)) {
        res.reason = "matrix is not skew-symmetrizable";
        return res;
    }
    const std::size_t n = b.size();
    std::map<IntMatrix, std::vector<std::size_t>> seen{{b, {}}};
    std::deque<IntMatrix> q{b};
    while (!q.empty()) {
        IntMatrix m = q.front();
        q.pop_front();
        ++res.explored;
        const auto& word = seen[m];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (std::abs(m[i][j] * m[j][i]) >= 4) {
                    res.reason = "mutation class contains |b_xy b_yx| >= 4";
                    res.witness = m;
                    res.word = word;
                    return res;
                }
        IntMatrix a = cartan_companion(m);
        if (is_finite_cartan(a)) {
            res.finite = true;
            res.witness = m;
            res.word = word;
            res.type = cartan_type_name(a);
            return res;
        }
        for (std::size_t k = 0; k < n; ++k) {
            IntMatrix t = mutate_matrix(m, k);
            if (seen.count(t)) continue;
            if (seen.size() >= cap) {
                res.reason = "mutation class exceeds exploration cap";
                return res;
            }
            auto w = word;
            w.push_back(k);
            seen.emplace(t, std::move(w));
            q.push_back(std::move(t));
        }
    }
    res.reason = "mutation class is finite and contains no finite-type Cartan companion";
    return res;
}

} // namespace asso

#endif
