#ifndef ASSO_IO_HPP
#define ASSO_IO_HPP

#include "builtins.hpp"
#include "fan.hpp"
#include "matrix.hpp"
#include "submodular.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

namespace asso {

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

inline IntMatrix matrix_from_json(const Json& j) {
    const Json& rows = j.is_object() ? j.at("B") : j;
    if (!rows.is_array()) throw std::invalid_argument("matrix must be an array of integer rows");
    IntMatrix b;
    for (const auto& r : rows) {
        if (!r.is_array()) throw std::invalid_argument("matrix must be an array of integer rows");
        IntVec row;
        for (const auto& x : r) {
            if (!x.is_number_integer()) throw std::invalid_argument("matrix entries must be integers");
            row.push_back(x.get<Int>());
        }
        b.push_back(std::move(row));
    }
    return b;
}

/**
 * A builtin name, a JSON file ({"B": rows, "d": symmetrizer} or bare rows)
 * or inline rows such as "[[0,1],[-1,0]]".
 */
inline ExchangeMatrix load_matrix(const std::string& source) {
    Json j;
    if (auto b = builtin_matrix(source)) return make_exchange_matrix(*b);
    if (!source.empty() && source.front() == '[') {
        try {
            j = Json::parse(source);
        } catch (const Json::parse_error& e) {
            throw std::invalid_argument(std::string("cannot parse inline matrix: ") + e.what());
        }
    } else if (std::filesystem::exists(source)) {
        try {
            j = Json::parse(read_file(source));
        } catch (const Json::parse_error& e) {
            throw std::invalid_argument("cannot parse " + source + ": " + e.what());
        }
    } else {
        throw std::invalid_argument("'" + source + "' is neither a builtin matrix, a file, nor inline rows");
    }
    IntMatrix b = matrix_from_json(j);
    if (j.is_object() && j.contains("d")) return make_exchange_matrix(b, j.at("d").get<IntVec>());
    return make_exchange_matrix(b);
}

inline Json to_json(const Rational& r) { return to_string(r); }

inline Json to_json(const RatVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

/** Seeds with B, g, c, d and neighbors, plus edges with their slot relabeling. */
inline Json graph_to_json(const ExchangeGraph& g, const std::string& type) {
    Json j;
    j["type"] = type;
    j["n"] = g.rank();
    j["B"] = g.b0;
    Json seeds = Json::array(), edges = Json::array();
    for (std::size_t s = 0; s < g.seeds.size(); ++s) {
        const auto& sd = g.seeds[s];
        Json e;
        e["key"] = sd.key();
        e["B"] = sd.primal.b;
        e["g"] = sd.primal.g;
        e["c"] = sd.primal.c;
        e["d"] = sd.primal.d;
        e["dual_c"] = sd.dual.c;
        Json nb = Json::array();
        for (std::size_t k = 0; k < g.rank(); ++k) {
            nb.push_back(g.neighbor(s, k));
            edges.push_back({{"from", s}, {"slot", k}, {"to", g.neighbor(s, k)}, {"perm", g.edges[s][k].perm}});
        }
        e["neighbors"] = nb;
        seeds.push_back(std::move(e));
    }
    j["seeds"] = std::move(seeds);
    j["edges"] = std::move(edges);
    j["variables"] = g.variables;
    j["cvectors"] = g.dual_cvectors;
    return j;
}

/** Exact strictly positive rational from a JSON string or integer. */
inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<Int>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument("rational values must be strings such as \"3/2\" or integers");
}

/** {"[g-vector]": "p/q", ...} covering every cluster variable. */
inline LiftFunction lift_from_json(const Json& j, const ExchangeGraph& g) {
    if (!j.is_object()) throw std::invalid_argument("lift function must map g-vectors to rationals");
    LiftFunction f;
    f.provenance = "user";
    f.values.assign(g.variables.size(), Rational(0));
    std::vector<bool> seen(g.variables.size(), false);
    for (const auto& [key, val] : j.items()) {
        IntVec gv;
        try {
            gv = Json::parse(key.front() == '[' ? key : "[" + key + "]").get<IntVec>();
        } catch (const std::exception&) {
            throw std::invalid_argument("bad g-vector key '" + key + "'");
        }
        std::size_t v;
        try {
            v = g.variable_id(gv);
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("'" + key + "' is not the g-vector of a cluster variable");
        }
        f.values[v] = rational_from_json(val);
        seen[v] = true;
    }
    for (std::size_t v = 0; v < seen.size(); ++v)
        if (!seen[v]) throw std::invalid_argument("lift function misses the variable " + Json(g.variables[v]).dump());
    return f;
}

/** {"lambda": ["1", "1", ...]} in coweight coordinates. */
inline RatVector lambda_from_json(const Json& j) {
    const Json& arr = j.is_object() ? j.at("lambda") : j;
    RatVector out;
    for (const auto& x : arr) out.push_back(rational_from_json(x));
    return out;
}

/**
 * "rho", "lambda:<file>" or a JSON file with user values. The result is
 * checked for exchange submodularity by the caller.
 */
inline LiftFunction load_lift(const std::string& source, const ExchangeGraph& g, unsigned threads = 1) {
    if (source.empty() || source == "rho") return f_rho(g, threads);
    if (source.rfind("lambda:", 0) == 0) return f_lambda(g, lambda_from_json(Json::parse(read_file(source.substr(7)))));
    return lift_from_json(Json::parse(read_file(source)), g);
}

inline Json lift_to_json(const LiftFunction& f, const ExchangeGraph& g) {
    Json j = Json::object();
    for (std::size_t v = 0; v < g.variables.size(); ++v) j[Json(g.variables[v]).dump()] = to_string(f(v));
    return j;
}

inline Json fan_cert_to_json(const SimplicialFanCert& c) {
    Json j;
    j["ok"] = c.ok();
    Json deps = Json::array();
    for (const auto& d : c.dependences)
        deps.push_back({{"seed", d.seed}, {"slot", d.slot}, {"gamma", to_string(d.gamma)}, {"gamma_prime", to_string(d.gamma_prime)},
                        {"delta", to_json(d.delta)}, {"eps", d.eps}});
    j["dependences"] = std::move(deps);
    j["disjoint_from_base"] = c.disjoint_from_base;
    j["random_directions"] = c.random_directions;
    j["random_hits"] = c.random_hits;
    j["failures"] = c.failures;
    return j;
}

} // namespace asso

#endif
