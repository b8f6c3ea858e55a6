#ifndef ASSO_SUBMODULAR_HPP
#define ASSO_SUBMODULAR_HPP

#include "cluster.hpp"

#include <numeric>

namespace asso {

/** Positive rational values on cluster variables, indexed by variable id. */
struct LiftFunction {
    std::vector<Rational> values;
    std::string provenance;  ///< "rho", "lambda", "user"

    const Rational& operator()(std::size_t v) const { return values[v]; }

    LiftFunction scaled(const Rational& f) const {
        LiftFunction out = *this;
        for (auto& v : out.values) v *= f;
        return out;
    }
};

/** deg[y][x] = (y || x), the compatibility degree read off d-vectors. */
struct CompatibilityTable {
    std::vector<std::vector<Int>> deg;

    Int operator()(std::size_t y, std::size_t x) const { return deg[y][x]; }
};

/** d-vectors of every variable relative to the cluster of seed `root`; d[var][slot of root]. */
inline std::vector<IntVec> relative_d_vectors(const ExchangeGraph& g, std::size_t root) {
    const std::size_t n = g.rank();
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    auto states = propagate(
        g, root, identity_columns(n, -1),
        [&](const std::vector<IntVec>& d, std::size_t s, std::size_t k) {
            auto out = d;
            out[k] = exchanged_d_vector(g.seeds[s].primal.b, d, k);
            return out;
        },
        [](const std::vector<IntVec>& d, const std::vector<std::size_t>& perm) { return permute_slots(d, perm); }, &bad);
    if (!bad.empty()) throw std::logic_error("d-vectors depend on the mutation path");
    std::vector<IntVec> out(g.variables.size());
    for (std::size_t s = 0; s < g.seeds.size(); ++s)
        for (std::size_t k = 0; k < n; ++k) {
            auto& slot = out[g.var[s][k]];
            if (slot.empty()) slot = states[s][k];
            else if (slot != states[s][k]) throw std::logic_error("d-vector of a variable differs between seeds");
        }
    return out;
}

inline CompatibilityTable compatibility_table(const ExchangeGraph& g, unsigned threads = 1) {
    const std::size_t nv = g.variables.size();
    CompatibilityTable t;
    t.deg.assign(nv, std::vector<Int>(nv, 0));
    parallel_for(nv, threads, [&](std::size_t y) {
        std::size_t root = 0;
        while (g.slot_of(root, y) == g.rank()) ++root;
        std::size_t slot = g.slot_of(root, y);
        auto d = relative_d_vectors(g, root);
        for (std::size_t x = 0; x < nv; ++x) t.deg[y][x] = x == y ? 0 : std::max<Int>(d[x][slot], 0);
    });
    for (std::size_t x = 0; x < nv; ++x)
        for (std::size_t y = 0; y < nv; ++y)
            if ((t.deg[x][y] == 0) != (t.deg[y][x] == 0)) throw std::logic_error("compatibility degree is not symmetric in vanishing");
    return t;
}

/** F(x) = 1/2 sum_{y != x} (y || x). */
inline LiftFunction f_rho(const CompatibilityTable& t) {
    LiftFunction f;
    f.provenance = "rho";
    const std::size_t nv = t.deg.size();
    for (std::size_t x = 0; x < nv; ++x) {
        Int s = 0;
        for (std::size_t y = 0; y < nv; ++y)
            if (y != x) s += t.deg[y][x];
        f.values.emplace_back(s, 2);
    }
    return f;
}

inline LiftFunction f_rho(const ExchangeGraph& g, unsigned threads = 1) { return f_rho(compatibility_table(g, threads)); }

/** Slots of sign eps in a bipartite matrix; zero rows count as positive. */
inline std::vector<std::size_t> bipartite_part(const IntMatrix& b, int eps) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < b.size(); ++i) {
        int s = is_zero_vector(b[i]) ? 1 : sign_of_coherent(b[i]);
        if (s == eps) out.push_back(i);
    }
    return out;
}

/** Orbits of cluster variables under the group generated by tau_+ and tau_-. */
inline std::vector<std::size_t> tau_orbits(const ExchangeGraph& g) {
    const IntMatrix& b0 = g.b0;
    if (!is_bipartite(b0)) throw std::invalid_argument("tau orbits need a bipartite initial matrix");
    const std::size_t nv = g.variables.size();
    std::vector<std::size_t> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
        return parent[v] == v ? v : parent[v] = find(parent[v]);
    };
    const std::vector<std::size_t> parts[2] = {bipartite_part(b0, 1), bipartite_part(b0, -1)};
    TrackedSeed s = g.seeds[0];
    const std::size_t max_steps = 2 * nv + 4;
    for (std::size_t step = 0; step < max_steps; ++step) {
        for (std::size_t k : parts[step % 2]) {
            std::size_t before = g.variable_id(s.primal.g[k]);
            s = mutate_tracked_seed(s, k);
            std::size_t after = g.variable_id(s.primal.g[k]);
            parent[find(before)] = find(after);
        }
        if (step % 2 == 1 && s.primal.g == g.seeds[0].primal.g) break;
    }
    std::vector<std::size_t> out(nv);
    for (std::size_t v = 0; v < nv; ++v) out[v] = find(v);
    return out;
}

/**
 * F_lambda for bipartite B0: constant on tau-orbits, equal to the
 * simple-coroot coordinate of lambda (given in coweight coordinates) at the
 * orbit's initial representative.
 */
inline LiftFunction f_lambda(const ExchangeGraph& g, const RatVector& lambda) {
    const std::size_t n = g.rank();
    if (lambda.size() != n) throw std::invalid_argument("lambda has the wrong dimension");
    if (!is_bipartite(g.b0)) throw std::invalid_argument("f_lambda needs a bipartite initial matrix");
    for (const auto& x : lambda)
        if (x <= 0) throw std::invalid_argument("lambda must be strictly positive");
    IntMatrix a = cartan_companion(g.b0);
    RootSystem rs = enumerate_roots(a);
    WeylElement w0 = longest_element(rs);
    RatVector image = act_coweight(a, w0, lambda);
    for (std::size_t i = 0; i < n; ++i)
        if (image[i] != -lambda[i]) throw std::invalid_argument("lambda is not fairly balanced");
    RatVector mu = coweight_to_coroot(a, lambda);

    auto orbit = tau_orbits(g);
    std::map<std::size_t, Rational> value;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t o = orbit[g.var[0][k]];
        auto it = value.find(o);
        if (it == value.end()) value.emplace(o, mu[k]);
        else if (it->second != mu[k]) throw std::invalid_argument("lambda is not fairly balanced on a tau-orbit");
    }
    LiftFunction f;
    f.provenance = "lambda";
    for (std::size_t v = 0; v < g.variables.size(); ++v) {
        auto it = value.find(orbit[v]);
        if (it == value.end()) throw std::logic_error("tau-orbit misses the initial cluster");
        f.values.push_back(it->second);
    }
    return f;
}

struct SubmodularReport {
    std::size_t edges = 0;
    Rational worst_slack;
    std::size_t worst_seed = 0, worst_slot = 0;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/** F(x) + F(x') > max(sum_{b_yk>0} b_yk F(y), sum_{b_yk<0} -b_yk F(y)) on every edge. */
inline SubmodularReport check_exchange_submodular(const LiftFunction& f, const ExchangeGraph& g) {
    SubmodularReport r;
    if (f.values.size() != g.variables.size()) throw std::invalid_argument("lift function does not cover the cluster variables");
    for (std::size_t v = 0; v < f.values.size(); ++v)
        if (f.values[v] <= 0) r.violations.push_back({0, v, "F is not positive on variable " + std::to_string(v)});
    bool first = true;
    for (std::size_t s = 0; s < g.seeds.size(); ++s) {
        const IntMatrix& b = g.seeds[s].primal.b;
        for (std::size_t k = 0; k < g.rank(); ++k) {
            std::size_t t = g.neighbor(s, k), kk = g.neighbor_slot(s, k);
            Rational plus = 0, minus = 0;
            for (std::size_t y = 0; y < g.rank(); ++y) {
                if (b[y][k] > 0) plus += f(g.var[s][y]) * b[y][k];
                else if (b[y][k] < 0) minus -= f(g.var[s][y]) * b[y][k];
            }
            Rational slack = f(g.var[s][k]) + f(g.var[t][kk]) - std::max(plus, minus);
            ++r.edges;
            if (first || slack < r.worst_slack) {
                r.worst_slack = slack;
                r.worst_seed = s;
                r.worst_slot = k;
                first = false;
            }
            if (slack <= 0) r.violations.push_back({s, k, "exchange submodularity fails"});
        }
    }
    return r;
}

} // namespace asso

#endif
