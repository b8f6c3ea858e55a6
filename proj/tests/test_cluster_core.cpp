#include "asso/builtins.hpp"
#include "asso/cluster.hpp"
#include "asso/rootsystem.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace asso;

namespace {

IntMatrix builtin(const std::string& name) { return *builtin_matrix(name); }

// b'_ij = -b_ij on row/column k, else b_ij + sgn(b_ik) [b_ik b_kj]_+
IntMatrix oracle_mutate(const IntMatrix& b, std::size_t k) {
    IntMatrix r = b;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (i == k || j == k) r[i][j] = -b[i][j];
            else r[i][j] = b[i][j] + sign(b[i][k]) * std::max<Int>(b[i][k] * b[k][j], 0);
        }
    return r;
}

// tropical y-seed mutation: y'_j = y_j y_k^{[b_kj]+} (y_k (+) 1)^{-b_kj}, with (+) = componentwise min
std::vector<IntVec> oracle_coefficients(const std::vector<IntVec>& p, const IntMatrix& b, std::size_t k) {
    std::vector<IntVec> r = p;
    for (std::size_t j = 0; j < p.size(); ++j) {
        if (j == k) {
            r[j] = negate(p[k]);
            continue;
        }
        for (std::size_t i = 0; i < p[k].size(); ++i)
            r[j][i] = p[j][i] + std::max<Int>(b[k][j], 0) * p[k][i] - b[k][j] * std::min<Int>(p[k][i], 0);
    }
    return r;
}

struct GradedSeed {
    IntMatrix b;
    std::vector<IntVec> c, g;
};

// g-vector of x'_k read off the Z^n grading (deg x_i = e_i, deg y_j = -column j of B0) of the exchange binomial
IntVec oracle_degree(const GradedSeed& s, const IntMatrix& b0, std::size_t k, IntVec* other) {
    const std::size_t n = b0.size();
    IntVec m1(n, 0), m2(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        Int plus = std::max<Int>(s.c[k][j], 0), minus = std::max<Int>(-s.c[k][j], 0);
        for (std::size_t i = 0; i < n; ++i) {
            m1[i] -= plus * b0[i][j];
            m2[i] -= minus * b0[i][j];
        }
    }
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t i = 0; i < n; ++i) {
            m1[i] += std::max<Int>(s.b[y][k], 0) * s.g[y][i];
            m2[i] += std::max<Int>(-s.b[y][k], 0) * s.g[y][i];
        }
    for (std::size_t i = 0; i < n; ++i) {
        m1[i] -= s.g[k][i];
        m2[i] -= s.g[k][i];
    }
    *other = m2;
    return m1;
}

std::size_t catalan(std::size_t k) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

// number of positive roots by Cartan type
std::size_t positive_roots(const std::string& type) {
    char t = type[0];
    std::size_t n = std::stoul(type.substr(1));
    switch (t) {
    case 'A': return n * (n + 1) / 2;
    case 'B':
    case 'C': return n * n;
    case 'D': return n * (n - 1);
    case 'G': return 6;
    case 'F': return 24;
    }
    return 0;
}

} // namespace

TEST(MutateMatrix, A3CyclicSlotOne) {
    IntMatrix expected = {{0, 1, -1}, {-1, 0, 0}, {1, 0, 0}};
    EXPECT_EQ(mutate_matrix(builtin("a3-cyclic"), 0), expected);
}

TEST(MutateMatrix, B2SlotOne) {
    IntMatrix expected = {{0, -1}, {2, 0}};
    EXPECT_EQ(mutate_matrix(builtin("b2"), 0), expected);
}

TEST(MutateMatrix, AgreesWithOracleAndIsInvolutive) {
    for (const auto& [name, b] : builtin_matrices())
        for (std::size_t k = 0; k < b.size(); ++k) {
            EXPECT_EQ(mutate_matrix(b, k), oracle_mutate(b, k)) << name << " slot " << k;
            EXPECT_EQ(mutate_matrix(mutate_matrix(b, k), k), b) << name;
        }
}

TEST(MutateMatrix, InvalidSlot) { EXPECT_THROW(mutate_matrix(builtin("a2"), 2), std::out_of_range); }

TEST(MutateMatrix, KeepsSymmetrizer) {
    ExchangeMatrix b = make_exchange_matrix(builtin("c3-cyclic"));
    ExchangeMatrix m = mutate_matrix(b, 1);
    EXPECT_EQ(m.d, b.d);
    EXPECT_TRUE(is_skew_symmetrizable_by(m.b, b.d));
}

TEST(Symmetrizer, MinimalPositiveOrRejected) {
    // b_ij d_j = -b_ji d_i
    EXPECT_EQ(make_exchange_matrix(builtin("b2")).d, (IntVec{1, 2}));
    EXPECT_EQ(make_exchange_matrix(builtin("a3-cyclic")).d, (IntVec{1, 1, 1}));
    EXPECT_THROW(make_exchange_matrix({{0, 1}, {1, 0}}), std::invalid_argument);
    EXPECT_THROW(make_exchange_matrix({{0, 1}, {-1, 0}}, {1, 2}), std::invalid_argument);
    EXPECT_THROW(make_exchange_matrix({{0, 1, 0}, {-1, 0}}), std::invalid_argument);
}

TEST(MutateCoefficients, B2PrincipalTupleAtSlotOne) {
    std::vector<IntVec> p = {{1, 0}, {0, 1}};
    auto r = mutate_coefficients(p, builtin("b2"), 0);
    EXPECT_EQ(r[0], (IntVec{-1, 0}));
    // b_12 = 1 > 0 multiplies p_2 by p_1^+ = p_1
    EXPECT_EQ(r[1], (IntVec{1, 1}));
    EXPECT_EQ(r, oracle_coefficients(p, builtin("b2"), 0));
}

TEST(MutateCoefficients, InvolutionAndTrivialTuple) {
    for (const auto& [name, b] : builtin_matrices()) {
        const std::size_t n = b.size();
        std::vector<IntVec> p = identity_columns(n), ones(n, IntVec(n, 0));
        for (std::size_t k = 0; k < n; ++k) {
            auto q = mutate_coefficients(p, b, k);
            EXPECT_EQ(q, oracle_coefficients(p, b, k)) << name;
            EXPECT_EQ(mutate_coefficients(q, mutate_matrix(b, k), k), p) << name;
            EXPECT_EQ(mutate_coefficients(ones, b, k), ones);
        }
    }
}

TEST(CartanCompanion, Examples) {
    EXPECT_EQ(cartan_companion(builtin("b2")), (IntMatrix{{2, -1}, {-2, 2}}));
    EXPECT_EQ(cartan_companion(IntMatrix(3, IntVec(3, 0))), (IntMatrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}));
    EXPECT_EQ(cartan_companion(builtin("a3-cyclic")), (IntMatrix{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
    EXPECT_FALSE(is_finite_cartan(cartan_companion(builtin("a3-cyclic"))));
}

TEST(FiniteType, Detection) {
    auto a = is_finite_type(builtin("a3-cyclic"));
    EXPECT_TRUE(a.finite);
    EXPECT_EQ(a.type, "A3");
    EXPECT_TRUE(is_finite_cartan(cartan_companion(a.witness)));
    auto c = is_finite_type(builtin("c3-cyclic"));
    EXPECT_TRUE(c.finite);
    EXPECT_EQ(c.type, "C3");
    EXPECT_FALSE(is_finite_type({{0, 2}, {-2, 0}}).finite);
    EXPECT_FALSE(is_finite_type({{0, 1, 1, 1}, {-1, 0, 1, 1}, {-1, -1, 0, 1}, {-1, -1, -1, 0}}).finite);
    EXPECT_EQ(is_finite_type(builtin("d5-cyclic")).type, "D5");
}

TEST(TrackedSeed, InitialSeed) {
    for (const auto& [name, b] : builtin_matrices()) {
        auto s = initial_tracked_seed(b);
        const std::size_t n = b.size();
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_EQ(s.primal.g[i], unit_vector(n, i));
            EXPECT_EQ(s.primal.d[i], negate(unit_vector(n, i)));
            EXPECT_GT(sign_of_coherent(s.primal.c[i]), 0);
            for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(dot(s.primal.g[i], s.dual.c[j]), i == j ? 1 : 0);
        }
        EXPECT_EQ(s.dual.b, dual_matrix(b));
    }
}

TEST(TrackedSeed, FirstMutationFromInitialSeed) {
    // skew-symmetric: g(x'_k) = -omega_k + sum_{b_ky > 0} b_ky omega_y
    IntMatrix b = builtin("a3-cyclic");
    for (std::size_t k = 0; k < 3; ++k) {
        IntVec expected = negate(unit_vector(3, k));
        for (std::size_t y = 0; y < 3; ++y)
            if (b[k][y] > 0) expected[y] += b[k][y];
        EXPECT_EQ(mutate_tracked_seed(initial_tracked_seed(b), k).primal.g[k], expected);
    }
    // B2 reads the exchanged column: x'_1 x_1 = y_1 + x_2^2
    EXPECT_EQ(mutate_tracked_seed(initial_tracked_seed(builtin("b2")), 0).primal.g[0], (IntVec{-1, 2}));
}

TEST(TrackedSeed, GVectorsMatchGradingOracleOnRandomWalks) {
    std::mt19937 rng(7);
    for (const auto& name : {"a3", "b2", "c2", "g2", "a3-cyclic", "c3-cyclic", "d4", "d5-cyclic"}) {
        IntMatrix b0 = builtin(name);
        const std::size_t n = b0.size();
        TrackedSeed s = initial_tracked_seed(b0);
        GradedSeed o{b0, identity_columns(n), identity_columns(n)};
        for (int step = 0; step < 40; ++step) {
            std::size_t k = rng() % n;
            IntVec m2;
            IntVec m1 = oracle_degree(o, b0, k, &m2);
            ASSERT_EQ(m1, m2) << name << ": exchange binomial is not homogeneous";
            o.g[k] = m1;
            o.c = oracle_coefficients(o.c, o.b, k);
            o.b = oracle_mutate(o.b, k);
            s = mutate_tracked_seed(s, k);
            ASSERT_EQ(s.primal.g, o.g) << name << " step " << step;
            ASSERT_EQ(s.primal.c, o.c) << name << " step " << step;
        }
    }
}

TEST(TrackedSeed, MutationIsAnInvolution) {
    for (const auto& name : {"b2", "a3-cyclic", "c3-cyclic", "d4"}) {
        TrackedSeed s = initial_tracked_seed(builtin(name));
        for (std::size_t k : {0, 1, 0, 1, 1}) s = mutate_tracked_seed(s, k);
        for (std::size_t k = 0; k < s.size(); ++k) {
            TrackedSeed t = mutate_tracked_seed(mutate_tracked_seed(s, k), k);
            EXPECT_EQ(t.primal, s.primal);
            EXPECT_EQ(t.dual, s.dual);
        }
    }
}

TEST(TrackedSeed, A3CyclicVariablesContainAllPlusMinusOmega) {
    auto g = enumerate_exchange_graph(builtin("a3-cyclic"));
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NO_THROW(g.variable_id(unit_vector(3, i)));
        EXPECT_NO_THROW(g.variable_id(negate(unit_vector(3, i))));
    }
}

TEST(ExchangeGraph, Counts) {
    auto a2 = enumerate_exchange_graph(builtin("a2"));
    EXPECT_EQ(a2.variables.size(), 5u);
    EXPECT_EQ(a2.seeds.size(), 5u);
    auto b2 = enumerate_exchange_graph(builtin("b2"));
    EXPECT_EQ(b2.variables.size(), 6u);
    EXPECT_EQ(b2.cvectors.size(), 8u);
    auto a3 = enumerate_exchange_graph(builtin("a3-cyclic"));
    EXPECT_EQ(a3.variables.size(), 9u);
    EXPECT_EQ(a3.cvectors.size(), 12u);
    EXPECT_EQ(a3.seeds.size(), catalan(4));
}

TEST(ExchangeGraph, CountingLawsOnEveryBuiltin) {
    for (const auto& [name, b] : builtin_matrices()) {
        auto ft = is_finite_type(b);
        ASSERT_TRUE(ft.finite) << name;
        const std::size_t n = b.size(), np = positive_roots(ft.type);
        EXPECT_EQ(enumerate_roots(cartan_companion(ft.witness)).positive.size(), np) << name;
        auto g = enumerate_exchange_graph(b);
        // n(h+2)/2 = |Phi+| + n and n h = 2|Phi+|
        EXPECT_EQ(g.variables.size(), np + n) << name;
        EXPECT_EQ(g.cvectors.size(), 2 * np) << name;
        EXPECT_EQ(g.dual_cvectors.size(), 2 * np) << name;
        if (ft.type[0] == 'A') {
            EXPECT_EQ(g.seeds.size(), catalan(n + 1)) << name;
        }
    }
}

TEST(ExchangeGraph, EdgesAreInvolutiveAndLabeled) {
    auto g = enumerate_exchange_graph(builtin("c3-cyclic"));
    for (std::size_t s = 0; s < g.seeds.size(); ++s)
        for (std::size_t k = 0; k < g.rank(); ++k) {
            std::size_t t = g.neighbor(s, k), kk = g.neighbor_slot(s, k);
            EXPECT_EQ(g.neighbor(t, kk), s);
            std::size_t shared = 0;
            for (std::size_t v : g.var[s]) shared += g.slot_of(t, v) < g.rank();
            EXPECT_EQ(shared, g.rank() - 1);
        }
}

TEST(ExchangeGraph, SeedCapSignalsSuspectedInfiniteType) {
    EXPECT_THROW(enumerate_exchange_graph(builtin("d4"), 10), BudgetExceeded);
    EXPECT_THROW(enumerate_exchange_graph({{0, 2}, {-2, 0}}, 1000), std::exception);
}

TEST(Checks, SignCoherenceDualityAndRoots) {
    for (const auto& name : {"a2", "b2", "c2", "g2", "a3-cyclic", "c3-cyclic", "d4", "d5-cyclic"}) {
        auto g = enumerate_exchange_graph(builtin(name));
        EXPECT_TRUE(check_sign_coherence(g, 2).ok()) << name;
        EXPECT_TRUE(check_duality(g, 2).ok()) << name;
        EXPECT_TRUE(check_cvector_roots(g).ok()) << name;
        std::set<IntVec> dual(g.dual_cvectors.begin(), g.dual_cvectors.end());
        for (const auto& c : g.dual_cvectors) EXPECT_TRUE(dual.count(negate(c))) << name;
    }
}

TEST(Checks, AcyclicCVectorsAreRoots) {
    for (const auto& name : {"a3", "b2", "g2", "d4"}) {
        IntMatrix b = builtin(name);
        auto g = enumerate_exchange_graph(b);
        auto rs = enumerate_roots(cartan_companion(b));
        std::set<IntVec> roots(rs.positive.begin(), rs.positive.end());
        for (const auto& r : rs.positive) roots.insert(negate(r));
        EXPECT_EQ(std::set<IntVec>(g.cvectors.begin(), g.cvectors.end()), roots) << name;
    }
}

TEST(Green, A2PentagonOrientation) {
    auto g = enumerate_exchange_graph(builtin("a2"));
    auto o = green_orientation(g);
    EXPECT_TRUE(o.acyclic);
    EXPECT_EQ(o.sources, std::vector<std::size_t>{0});
    EXPECT_EQ(o.sinks.size(), 1u);
    std::size_t edges = 0;
    for (const auto& out : o.out) edges += out.size();
    EXPECT_EQ(edges, 5u);
}

TEST(Green, UniqueSourceAndSinkOnBuiltins) {
    for (const auto& name : acceptance_builtins()) {
        auto o = green_orientation(enumerate_exchange_graph(builtin(name)));
        EXPECT_TRUE(o.acyclic) << name;
        EXPECT_EQ(o.sources, std::vector<std::size_t>{0}) << name;
        EXPECT_EQ(o.sinks.size(), 1u) << name;
    }
}

TEST(Propagate, ReportsNoInconsistencyForSlotCounters) {
    auto g = enumerate_exchange_graph(builtin("a3-cyclic"));
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    auto ids = propagate(
        g, 0, g.var[0], [&](const std::vector<std::size_t>& st, std::size_t s, std::size_t k) {
            auto out = st;
            out[k] = g.var[g.neighbor(s, k)][g.neighbor_slot(s, k)];
            return out;
        },
        [](const std::vector<std::size_t>& st, const std::vector<std::size_t>& perm) {
            std::vector<std::size_t> out(st.size());
            for (std::size_t j = 0; j < st.size(); ++j) out[perm[j]] = st[j];
            return out;
        },
        &bad);
    EXPECT_TRUE(bad.empty());
    EXPECT_EQ(ids, g.var);
}
