#ifndef ASSO_FAN_HPP
#define ASSO_FAN_HPP

#include "cluster.hpp"
#include "linalg.hpp"
#include "lp.hpp"

#include <random>

namespace asso {

/** gamma g(x) + gamma' g(x') = sum_y delta_y g(y) across one exchange. */
struct DependenceRecord {
    std::size_t seed = 0, slot = 0;
    Rational gamma, gamma_prime;
    RatVector delta;  ///< indexed by slot of the source seed; delta[slot] = 0
    int eps = 0;      ///< side of the exchange rule that matched
    bool degenerate = false;  ///< both sides coincide (zero column)
    std::string failure;
};

/** Rays, maximal cones and labeled adjacency of a simplicial fan candidate. */
struct FanData {
    std::vector<IntVec> rays;
    std::vector<std::vector<std::size_t>> cones;  ///< cones[s][k] = ray id
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency;  ///< (target seed, target slot)
    std::vector<IntMatrix> b;                     ///< exchange matrix at each seed
};

inline FanData fan_data(const ExchangeGraph& g) {
    FanData f;
    f.rays = g.variables;
    f.cones = g.var;
    f.adjacency.resize(g.seeds.size());
    for (std::size_t s = 0; s < g.seeds.size(); ++s) {
        for (std::size_t k = 0; k < g.rank(); ++k) f.adjacency[s].emplace_back(g.neighbor(s, k), g.neighbor_slot(s, k));
        f.b.push_back(g.seeds[s].primal.b);
    }
    return f;
}

/**
 * Solves the linear dependence among the g-vectors of two adjacent seeds and
 * matches it against both sides of the exchange rule.
 */
inline DependenceRecord edge_dependence(const FanData& f, std::size_t s, std::size_t k) {
    const std::size_t n = f.cones[s].size();
    DependenceRecord r;
    r.seed = s;
    r.slot = k;
    auto [t, kk] = f.adjacency[s][k];
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < n; ++j) cols.push_back(f.rays[f.cones[s][j]]);
    cols.push_back(f.rays[f.cones[t][kk]]);
    auto sol = solve_linear(from_columns(cols), RatVector(n, Rational(0)));
    if (sol->kernel.size() != 1 || sol->kernel[0][k].is_zero()) {
        r.failure = "g-vectors of adjacent seeds do not have a one-dimensional dependence through the exchanged pair";
        return r;
    }
    RatVector kv = sol->kernel[0];
    Rational scale = kv[k];
    for (auto& x : kv) x /= scale;
    r.gamma = 1;
    r.gamma_prime = kv[n];
    r.delta.assign(n, Rational(0));
    for (std::size_t y = 0; y < n; ++y)
        if (y != k) r.delta[y] = -kv[y];
    if (r.gamma_prime <= 0) {
        r.failure = "exchanged g-vectors lie on the same side of the common wall";
        return r;
    }
    const IntMatrix& b = f.b[s];
    int matched = 0;
    for (int eps : {1, -1}) {
        bool ok = r.gamma_prime == 1;
        for (std::size_t y = 0; y < n && ok; ++y)
            if (y != k) ok = r.delta[y] == Rational(std::max<Int>(eps * b[y][k], 0));
        if (ok) {
            ++matched;
            if (r.eps == 0) r.eps = eps;
        }
    }
    if (matched == 0) r.failure = "dependence matches neither side of the exchange rule";
    r.degenerate = matched == 2;
    return r;
}

struct SimplicialFanCert {
    std::vector<DependenceRecord> dependences;
    std::vector<bool> disjoint_from_base;  ///< per seed; seed 0 is the base cone
    std::size_t random_directions = 0;
    std::size_t random_hits = 0;           ///< directions found in exactly one closed cone
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/**
 * Conditions of the simplicial fan criterion: basis cones, exchange
 * dependences with matching signs, and open-cone disjointness from the base
 * cone (the positive orthant) certified by exact LP.
 */
inline SimplicialFanCert verify_complete_fan(const FanData& f, unsigned threads = 1, std::size_t directions = 100,
                                             std::uint64_t rng_seed = 20240521) {
    SimplicialFanCert cert;
    const std::size_t N = f.cones.size();
    if (N == 0) {
        cert.failures.push_back("empty fan");
        return cert;
    }
    const std::size_t n = f.cones[0].size();

    std::vector<std::vector<DependenceRecord>> deps(N);
    std::vector<std::string> fail(N);
    std::vector<char> disjoint(N, 0);
    parallel_for(N, threads, [&](std::size_t s) {
        std::vector<IntVec> cols;
        for (std::size_t j = 0; j < n; ++j) cols.push_back(f.rays[f.cones[s][j]]);
        if (rank(cols) != n) {
            fail[s] = "seed " + std::to_string(s) + ": g-vectors are not a basis";
            return;
        }
        for (std::size_t k = 0; k < n; ++k) {
            auto [t, kk] = f.adjacency[s][k];
            if (f.adjacency[t][kk] != std::make_pair(s, k)) fail[s] = "seed " + std::to_string(s) + ": adjacency is not involutive";
            deps[s].push_back(edge_dependence(f, s, k));
            if (!deps[s].back().failure.empty() && fail[s].empty())
                fail[s] = "seed " + std::to_string(s) + " slot " + std::to_string(k) + ": " + deps[s].back().failure;
        }
        if (s == 0) {
            disjoint[s] = 1;
            return;
        }
        // lambda > 0 and sum lambda_j g_j > 0 coordinatewise must be infeasible
        std::vector<LinearConstraint> cons;
        for (std::size_t j = 0; j < n; ++j) {
            RatVector e(n, Rational(0));
            e[j] = 1;
            cons.push_back({e, Relation::Greater, Rational(0)});
        }
        for (std::size_t i = 0; i < n; ++i) {
            RatVector row(n);
            for (std::size_t j = 0; j < n; ++j) row[j] = Rational(cols[j][i]);
            cons.push_back({row, Relation::Greater, Rational(0)});
        }
        disjoint[s] = !lp_feasible(cons).feasible;
        if (!disjoint[s]) fail[s] = "seed " + std::to_string(s) + ": open cone meets the base cone";
    });
    for (std::size_t s = 0; s < N; ++s) {
        cert.dependences.insert(cert.dependences.end(), deps[s].begin(), deps[s].end());
        cert.disjoint_from_base.push_back(disjoint[s] != 0);
        if (!fail[s].empty()) cert.failures.push_back(fail[s]);
    }
    {
        std::vector<IntVec> base;
        for (std::size_t j = 0; j < n; ++j) base.push_back(f.rays[f.cones[0][j]]);
        std::sort(base.begin(), base.end());
        std::vector<IntVec> id = identity_columns(n);
        std::sort(id.begin(), id.end());
        if (base != id) cert.failures.push_back("base cone is not the positive orthant");
    }
    if (!cert.ok()) return cert;

    // random directions: each must lie in exactly one closed cone
    std::mt19937_64 rng(rng_seed);
    std::uniform_int_distribution<Int> dist(-1000, 1000);
    std::vector<RatVector> dirs(directions, RatVector(n));
    for (auto& v : dirs)
        for (auto& x : v) x = Rational(dist(rng));
    std::vector<std::size_t> hits(directions, 0);
    std::vector<RatMatrix> inverses(N);
    parallel_for(N, threads, [&](std::size_t s) {
        std::vector<IntVec> cols;
        for (std::size_t j = 0; j < n; ++j) cols.push_back(f.rays[f.cones[s][j]]);
        inverses[s] = *inverse(from_columns(cols));
    });
    parallel_for(directions, threads, [&](std::size_t d) {
        for (std::size_t s = 0; s < N; ++s) {
            RatVector lam = inverses[s] * dirs[d];
            bool inside = true;
            for (const auto& x : lam) inside = inside && x >= 0;
            hits[d] += inside;
        }
    });
    cert.random_directions = directions;
    for (std::size_t d = 0; d < directions; ++d) {
        cert.random_hits += hits[d] == 1;
        if (hits[d] != 1)
            cert.failures.push_back("random direction " + std::to_string(d) + " lies in " + std::to_string(hits[d]) + " closed cones");
    }
    return cert;
}

inline SimplicialFanCert verify_complete_fan(const ExchangeGraph& g, unsigned threads = 1) {
    return verify_complete_fan(fan_data(g), threads);
}

struct CoarseningReport {
    std::size_t walls = 0;
    std::size_t distinct_normals = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/** Every wall of the g-vector fan is orthogonal to the dual c-vector of the missing slot. */
inline CoarseningReport check_coarsening(const ExchangeGraph& g) {
    CoarseningReport r;
    const std::size_t n = g.rank();
    std::set<IntVec> dual(g.dual_cvectors.begin(), g.dual_cvectors.end());
    std::set<IntVec> used;
    for (std::size_t s = 0; s < g.seeds.size(); ++s) {
        const auto& sd = g.seeds[s];
        for (std::size_t k = 0; k < n; ++k) {
            ++r.walls;
            std::vector<RatVector> rows;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) rows.push_back(to_rational(sd.primal.g[j]));
            std::optional<LinearSolution> sol;
            if (rows.empty()) sol = LinearSolution{RatVector(n), {RatVector(n, Rational(1))}};
            else sol = solve_linear(RatMatrix::from_rows(rows), RatVector(rows.size(), Rational(0)));
            const IntVec& c = sd.dual.c[k];
            bool parallel = sol->kernel.size() == 1 && rank(std::vector<RatVector>{sol->kernel[0], to_rational(c)}) == 1;
            if (!parallel || !dual.count(c))
                r.failures.push_back("seed " + std::to_string(s) + " slot " + std::to_string(k) + ": wall normal is not a dual c-vector");
            IntVec canon = sign_of_coherent(c) < 0 ? negate(c) : c;
            used.insert(canon);
        }
    }
    r.distinct_normals = used.size();
    return r;
}

} // namespace asso

#endif
