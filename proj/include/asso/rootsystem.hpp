#ifndef ASSO_ROOTSYSTEM_HPP
#define ASSO_ROOTSYSTEM_HPP

#include "linalg.hpp"
#include "matrix.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace asso {

// Cartan matrix convention: a_ij = <alpha_i^vee, alpha_j>. Roots are written
// in the simple-root basis, weights in the fundamental-weight basis, coweights
// in the fundamental-coweight basis.

/** s_i on root coordinates. */
inline IntVec reflect_root(const IntMatrix& a, std::size_t i, IntVec v) {
    Int p = 0;
    for (std::size_t j = 0; j < v.size(); ++j) p += a[i][j] * v[j];
    v[i] -= p;
    return v;
}

/** s_i on weight coordinates: v - v_i alpha_i, alpha_i = column i of A. */
inline IntVec reflect_weight(const IntMatrix& a, std::size_t i, IntVec v) {
    Int vi = v[i];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= vi * a[j][i];
    return v;
}

/** s_i on coweight coordinates: v - v_i alpha_i^vee, alpha_i^vee = row i of A. */
inline RatVector reflect_coweight(const IntMatrix& a, std::size_t i, RatVector v) {
    Rational vi = v[i];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= vi * a[i][j];
    return v;
}

inline IntVec unit_vector(std::size_t n, std::size_t i) {
    IntVec e(n, 0);
    e[i] = 1;
    return e;
}

/** Connected components of the Dynkin diagram, each sorted. */
inline std::vector<std::vector<std::size_t>> dynkin_components(const IntMatrix& a) {
    const std::size_t n = a.size();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t r = 0; r < n; ++r) {
        if (comp[r] >= 0) continue;
        std::vector<std::size_t> stack{r}, members;
        comp[r] = static_cast<int>(out.size());
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            members.push_back(i);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && a[i][j] != 0 && comp[j] < 0) {
                    comp[j] = comp[r];
                    stack.push_back(j);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(members);
    }
    return out;
}

/** Relative squared root lengths s with s_i a_ij = s_j a_ji, minimal positive integers. */
inline std::optional<IntVec> root_lengths(const IntMatrix& a) {
    // s_i a_ij = s_j a_ji  <=>  (-A with zero diagonal) is skew-symmetrized by ... use the symmetrizer search on M_ij = a_ji (i<j), -a_ji (i>j)
    const std::size_t n = a.size();
    IntMatrix m(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) m[i][j] = (i < j ? 1 : -1) * a[j][i];
    return find_symmetrizer(m);
}

/** Sylvester test: the symmetrization diag(s) A is positive definite. */
inline bool is_finite_cartan(const IntMatrix& a) {
    auto s = root_lengths(a);
    if (!s) return false;
    const std::size_t n = a.size();
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational((*s)[i] * a[i][j]);
    // leading principal minors via fraction-free elimination without pivoting
    for (std::size_t k = 0; k < n; ++k) {
        if (m(k, k) <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k).is_zero()) continue;
            Rational f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return true;
}

struct RootSystem {
    IntMatrix cartan;
    std::vector<IntVec> positive;  ///< sorted by height, then lexicographically

    std::size_t rank() const { return cartan.size(); }
    /** 2|Phi+|/n; meaningful for irreducible systems. */
    Rational coxeter_number() const {
        return Rational(2 * static_cast<Int>(positive.size()), static_cast<Int>(rank()));
    }
};

/** Closure of the simple roots under simple reflections (positive part). */
inline RootSystem enumerate_roots(const IntMatrix& a, std::size_t cap = 100000) {
    const std::size_t n = a.size();
    std::set<IntVec> seen;
    std::vector<IntVec> stack;
    for (std::size_t i = 0; i < n; ++i) {
        seen.insert(unit_vector(n, i));
        stack.push_back(unit_vector(n, i));
    }
    while (!stack.empty()) {
        IntVec r = stack.back();
        stack.pop_back();
        for (std::size_t i = 0; i < n; ++i) {
            IntVec s = reflect_root(a, i, r);
            if (sign_of_coherent(s) > 0 && seen.insert(s).second) {
                if (seen.size() > cap) throw std::runtime_error("enumerate_roots: root bound exceeded (Cartan matrix not of finite type)");
                stack.push_back(s);
            }
        }
    }
    RootSystem rs{a, std::vector<IntVec>(seen.begin(), seen.end())};
    std::stable_sort(rs.positive.begin(), rs.positive.end(), [](const IntVec& x, const IntVec& y) {
        Int hx = 0, hy = 0;
        for (Int v : x) hx += v;
        for (Int v : y) hy += v;
        return hx < hy;
    });
    return rs;
}

/**
 * Real-root test in the (possibly infinite) root system of a symmetrizable
 * Cartan matrix: descend by height-lowering simple reflections.
 */
inline bool is_real_root(const IntMatrix& a, IntVec v) {
    int sg = sign_of_coherent(v);
    if (sg == 0) return false;
    if (sg < 0) v = negate(v);
    const std::size_t n = a.size();
    for (;;) {
        Int height = 0;
        for (Int x : v) height += x;
        if (height == 1) return true;
        bool moved = false;
        for (std::size_t i = 0; i < n && !moved; ++i) {
            Int p = 0;
            for (std::size_t j = 0; j < n; ++j) p += a[i][j] * v[j];
            if (p > 0 && v[i] > 0) {
                v = reflect_root(a, i, v);
                if (sign_of_coherent(v) <= 0) return false;
                moved = true;
            }
        }
        if (!moved) return false;
    }
}

/** Apply the word s_{w[0]} s_{w[1]} ... to a root (rightmost letter first). */
inline IntVec apply_word_root(const IntMatrix& a, const std::vector<std::size_t>& word, IntVec v) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = reflect_root(a, *it, v);
    return v;
}

inline IntVec apply_word_weight(const IntMatrix& a, const std::vector<std::size_t>& word, IntVec v) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = reflect_weight(a, *it, v);
    return v;
}

inline RatVector apply_word_coweight(const IntMatrix& a, const std::vector<std::size_t>& word, RatVector v) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = reflect_coweight(a, *it, v);
    return v;
}

struct WeylElement {
    std::vector<std::size_t> word;
    IntMatrix weight_matrix;            ///< column j = image of omega_j
    std::vector<std::size_t> root_perm; ///< action on positive roots followed by negatives
};

inline WeylElement make_weyl_element(const RootSystem& rs, std::vector<std::size_t> word) {
    const std::size_t n = rs.rank();
    WeylElement w;
    w.word = std::move(word);
    w.weight_matrix.assign(n, IntVec(n));
    for (std::size_t j = 0; j < n; ++j) {
        IntVec img = apply_word_weight(rs.cartan, w.word, unit_vector(n, j));
        for (std::size_t i = 0; i < n; ++i) w.weight_matrix[i][j] = img[i];
    }
    std::vector<IntVec> all = rs.positive;
    for (const auto& r : rs.positive) all.push_back(negate(r));
    std::map<IntVec, std::size_t> index;
    for (std::size_t i = 0; i < all.size(); ++i) index[all[i]] = i;
    for (const auto& r : all) {
        auto it = index.find(apply_word_root(rs.cartan, w.word, r));
        if (it == index.end()) throw std::logic_error("Weyl element does not permute the roots");
        w.root_perm.push_back(it->second);
    }
    return w;
}

/**
 * c-sorting word of w0: scan copies of c, keep a letter iff it increases
 * length, i.e. the current element sends the simple root to a positive root.
 */
inline std::vector<std::size_t> c_sorting_word(const RootSystem& rs, const std::vector<std::size_t>& c) {
    const std::size_t n = rs.rank();
    {
        std::vector<std::size_t> s(c);
        std::sort(s.begin(), s.end());
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] != i || s.size() != n) throw std::invalid_argument("c_sorting_word: c must be a permutation of the simple reflections");
    }
    std::vector<std::size_t> word;
    const std::size_t len = rs.positive.size();
    std::size_t idle = 0;
    while (word.size() < len) {
        bool progress = false;
        for (std::size_t i : c) {
            if (word.size() == len) break;
            if (sign_of_coherent(apply_word_root(rs.cartan, word, unit_vector(n, i))) > 0) {
                word.push_back(i);
                progress = true;
            }
        }
        if (!progress && ++idle > 1) throw std::logic_error("c_sorting_word: no progress");
    }
    return word;
}

inline WeylElement longest_element(const RootSystem& rs) {
    std::vector<std::size_t> c(rs.rank());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = i;
    WeylElement w = make_weyl_element(rs, c_sorting_word(rs, c));
    const std::size_t np = rs.positive.size();
    for (std::size_t i = 0; i < np; ++i)
        if (w.root_perm[i] < np) throw std::logic_error("longest element does not send positive roots to negative roots");
    return w;
}

/** w on coweight coordinates. */
inline RatVector act_coweight(const IntMatrix& a, const WeylElement& w, const RatVector& v) {
    return apply_word_coweight(a, w.word, v);
}

/** Simple-coroot coordinates of a coweight: mu = A^{-T} lambda. */
inline RatVector coweight_to_coroot(const IntMatrix& a, const RatVector& lambda) {
    RatMatrix at = RatMatrix::from_int(a).transpose();
    auto inv = inverse(at);
    if (!inv) throw std::invalid_argument("Cartan matrix is singular");
    return (*inv) * lambda;
}

/** rho^vee in coweight coordinates. */
inline RatVector rho_vee(std::size_t n) { return RatVector(n, Rational(1)); }

/** W-orbit of omega_i in weight coordinates. */
inline std::set<IntVec> weight_orbit(const IntMatrix& a, const IntVec& start, std::size_t cap = 1000000) {
    std::set<IntVec> seen{start};
    std::vector<IntVec> stack{start};
    while (!stack.empty()) {
        IntVec v = stack.back();
        stack.pop_back();
        for (std::size_t i = 0; i < a.size(); ++i) {
            IntVec w = reflect_weight(a, i, v);
            if (seen.insert(w).second) {
                if (seen.size() > cap) throw std::runtime_error("weight_orbit: bound exceeded");
                stack.push_back(w);
            }
        }
    }
    return seen;
}

/** Cartan type name of a finite-type Cartan matrix, e.g. "A3" or "A1xA1". */
inline std::string cartan_type_name(const IntMatrix& a) {
    std::string out;
    for (const auto& comp : dynkin_components(a)) {
        const std::size_t n = comp.size();
        IntMatrix sub(n, IntVec(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sub[i][j] = a[comp[i]][comp[j]];
        std::size_t np = enumerate_roots(sub).positive.size();
        Int maxbond = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) maxbond = std::max(maxbond, sub[i][j] * sub[j][i]);
        std::string name;
        std::size_t nn = n;
        if (maxbond <= 1) {
            if (np == n * (n + 1) / 2) name = "A";
            else if (np == n * (n - 1)) name = "D";
            else name = "E";
        } else if (maxbond == 3) {
            name = "G";
        } else if (n == 4 && np == 24) {
            name = "F";
        } else {
            auto s = root_lengths(sub);
            std::size_t shorts = 0;
            Int smin = *std::min_element(s->begin(), s->end());
            for (Int x : *s) shorts += x == smin;
            if (n == 2) name = (*s)[1] == smin ? "B" : "C";
            else name = shorts == 1 ? "B" : "C";
        }
        if (!out.empty()) out += "x";
        out += name + std::to_string(nn);
    }
    return out;
}

} // namespace asso

#endif
