#include "asso/matrix.hpp"
#include "asso/rootsystem.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace asso;

namespace {

const IntMatrix A1 = {{2}};
const IntMatrix A2 = {{2, -1}, {-1, 2}};
const IntMatrix A3 = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
const IntMatrix B2 = {{2, -1}, {-2, 2}};
const IntMatrix G2 = {{2, -1}, {-3, 2}};

// reduced words of w0 by breadth first search on the weight action of rho
std::vector<std::vector<std::size_t>> reduced_words_of_w0(const IntMatrix& a, std::size_t length) {
    const std::size_t n = a.size();
    IntVec rho(n, 1);
    std::vector<std::pair<IntVec, std::vector<std::size_t>>> layer = {{rho, {}}};
    for (std::size_t l = 0; l < length; ++l) {
        std::vector<std::pair<IntVec, std::vector<std::size_t>>> next;
        for (const auto& [v, w] : layer)
            for (std::size_t i = 0; i < n; ++i) {
                // s_i w is longer than w iff <w rho, alpha_i vee> > 0
                IntVec u = apply_word_weight(a, {i}, v);
                if (v[i] <= 0) continue;
                auto w2 = w;
                w2.push_back(i);
                next.emplace_back(u, w2);
            }
        layer = std::move(next);
    }
    std::vector<std::vector<std::size_t>> out;
    for (const auto& [v, w] : layer)
        if (v == negate(rho)) out.push_back(w);
    return out;
}

std::vector<std::size_t> lex_min_subword_of_c_powers(const std::vector<std::vector<std::size_t>>& words, const std::vector<std::size_t>& c) {
    // position of each letter in c^infinity, lexicographically least position sequence wins
    std::vector<std::size_t> best;
    std::vector<std::size_t> best_pos;
    for (const auto& w : words) {
        std::vector<std::size_t> pos;
        std::size_t p = 0;
        for (std::size_t x : w) {
            while (c[p % c.size()] != x) ++p;
            pos.push_back(p++);
        }
        if (best.empty() || pos < best_pos) {
            best = w;
            best_pos = pos;
        }
    }
    return best;
}

} // namespace

TEST(Roots, PositiveRootCounts) {
    EXPECT_EQ(enumerate_roots(A2).positive.size(), 3u);
    EXPECT_EQ(enumerate_roots(B2).positive.size(), 4u);
    auto a3 = enumerate_roots(A3);
    EXPECT_EQ(a3.positive.size(), 6u);
    EXPECT_EQ(a3.coxeter_number(), Rational(4));
    EXPECT_EQ(enumerate_roots(G2).coxeter_number(), Rational(6));
}

TEST(Roots, TypeAPositiveRootsAreIntervals) {
    auto rs = enumerate_roots(A3);
    std::set<IntVec> expected;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j) {
            IntVec v(3, 0);
            for (std::size_t k = i; k <= j; ++k) v[k] = 1;
            expected.insert(v);
        }
    EXPECT_EQ(std::set<IntVec>(rs.positive.begin(), rs.positive.end()), expected);
}

TEST(Roots, ReflectionsPermuteTheRootSet) {
    for (const auto& a : {A2, A3, B2, G2}) {
        auto rs = enumerate_roots(a);
        std::set<IntVec> all(rs.positive.begin(), rs.positive.end());
        for (const auto& r : rs.positive) all.insert(negate(r));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (const auto& r : all) EXPECT_TRUE(all.count(reflect_root(a, i, r)));
    }
}

TEST(Roots, AffineCartanRejected) {
    EXPECT_FALSE(is_finite_cartan({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
    EXPECT_FALSE(is_finite_cartan({{2, -2}, {-2, 2}}));
    EXPECT_THROW(enumerate_roots({{2, -2}, {-2, 2}}, 1000), std::exception);
}

TEST(Roots, RealRootRecognition) {
    EXPECT_TRUE(is_real_root(B2, {1, 2}));
    EXPECT_TRUE(is_real_root(B2, {-1, -1}));
    EXPECT_FALSE(is_real_root(B2, {2, 1}));
    EXPECT_FALSE(is_real_root(A2, {1, -1}));
}

TEST(LongestElement, MinusIdentityOrDiagramFlip) {
    auto a1 = longest_element(enumerate_roots(A1));
    EXPECT_EQ(a1.weight_matrix, (IntMatrix{{-1}}));
    auto b2 = longest_element(enumerate_roots(B2));
    EXPECT_EQ(b2.weight_matrix, (IntMatrix{{-1, 0}, {0, -1}}));
    auto a2 = longest_element(enumerate_roots(A2));
    // column 0 is the image of omega_1
    EXPECT_EQ(a2.weight_matrix[0][0], 0);
    EXPECT_EQ(a2.weight_matrix[1][0], -1);
}

TEST(LongestElement, RhoVeeIsFairlyBalanced) {
    for (const auto& a : {A1, A2, A3, B2, G2}) {
        auto w0 = longest_element(enumerate_roots(a));
        RatVector rho = rho_vee(a.size()), minus;
        for (const auto& x : rho) minus.push_back(-x);
        EXPECT_EQ(act_coweight(a, w0, rho), minus);
    }
}

TEST(CSortingWord, SmallTypes) {
    EXPECT_EQ(c_sorting_word(enumerate_roots(A1), {0}), (std::vector<std::size_t>{0}));
    EXPECT_EQ(c_sorting_word(enumerate_roots(A2), {0, 1}), (std::vector<std::size_t>{0, 1, 0}));
    EXPECT_EQ(c_sorting_word(enumerate_roots(B2), {0, 1}), (std::vector<std::size_t>{0, 1, 0, 1}));
    EXPECT_THROW(c_sorting_word(enumerate_roots(A2), {0, 0}), std::invalid_argument);
}

TEST(CSortingWord, MatchesExhaustiveReducedWordSearch) {
    for (const auto& a : {A2, A3, B2, G2}) {
        auto rs = enumerate_roots(a);
        auto words = reduced_words_of_w0(a, rs.positive.size());
        ASSERT_FALSE(words.empty());
        std::vector<std::size_t> c(a.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = i;
        for (int rot = 0; rot < 2; ++rot) {
            EXPECT_EQ(c_sorting_word(rs, c), lex_min_subword_of_c_powers(words, c));
            std::reverse(c.begin(), c.end());
        }
    }
}

TEST(Coweights, CorootCoordinatesOfRhoVee) {
    // A2: rho vee = alpha1 vee + alpha2 vee
    EXPECT_EQ(coweight_to_coroot(A2, rho_vee(2)), (RatVector{1, 1}));
    // A3: rho vee = 3/2, 2, 3/2
    EXPECT_EQ(coweight_to_coroot(A3, rho_vee(3)), (RatVector{Rational(3, 2), 2, Rational(3, 2)}));
}

TEST(CartanTypeName, Classification) {
    EXPECT_EQ(cartan_type_name(A3), "A3");
    EXPECT_EQ(cartan_type_name(G2), "G2");
    EXPECT_EQ(cartan_type_name(cartan_companion({{0, 1, 1, 1}, {-1, 0, 0, 0}, {-1, 0, 0, 0}, {-1, 0, 0, 0}})), "D4");
}
