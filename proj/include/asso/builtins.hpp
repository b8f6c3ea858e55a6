#ifndef ASSO_BUILTINS_HPP
#define ASSO_BUILTINS_HPP

#include "rational.hpp"

#include <map>
#include <optional>
#include <string>

namespace asso {

/** Named exchange matrices. */
inline const std::map<std::string, IntMatrix>& builtin_matrices() {
    static const std::map<std::string, IntMatrix> m = {
        {"a1", {{0}}},
        {"a2", {{0, 1}, {-1, 0}}},
        {"a3", {{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}},
        {"a4", {{0, 1, 0, 0}, {-1, 0, 1, 0}, {0, -1, 0, 1}, {0, 0, -1, 0}}},
        {"b2", {{0, 1}, {-2, 0}}},
        {"c2", {{0, 2}, {-1, 0}}},
        {"g2", {{0, 1}, {-3, 0}}},
        {"d4", {{0, 1, 1, 1}, {-1, 0, 0, 0}, {-1, 0, 0, 0}, {-1, 0, 0, 0}}},
        {"a3-cyclic", {{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}},
        {"c3-cyclic", {{0, -1, 2}, {1, 0, -2}, {-1, 1, 0}}},
        {"d5-cyclic", {{0, 1, 0, 0, -1}, {-1, 0, 1, 0, 0}, {0, -1, 0, 1, 0}, {0, 0, -1, 0, 1}, {1, 0, 0, -1, 0}}},
    };
    return m;
}

inline std::optional<IntMatrix> builtin_matrix(const std::string& name) {
    auto it = builtin_matrices().find(name);
    if (it == builtin_matrices().end()) return std::nullopt;
    return it->second;
}

/** The builtins every acceptance check sweeps over. */
inline std::vector<std::string> acceptance_builtins() {
    return {"a2", "b2", "c2", "a3-cyclic", "c3-cyclic", "d4", "d5-cyclic"};
}

} // namespace asso

#endif
