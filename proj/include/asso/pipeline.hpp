#ifndef ASSO_PIPELINE_HPP
#define ASSO_PIPELINE_HPP

#include "io.hpp"
#include "polytope.hpp"
#include "rootsystem.hpp"
#include "svg.hpp"
#include "typea.hpp"
#include "universal.hpp"

#include <filesystem>

namespace asso {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_finite_type = 2,
    exit_enumerate = 3,
    exit_algebra = 4,
    exit_fan = 5,
    exit_lift = 6,
    exit_associahedron = 7,
    exit_green = 8,
    exit_universal = 9,
    exit_zonotope = 10,
    exit_typea = 11,
};

struct RunConfig {
    std::string matrix;
    std::string lift = "rho";    ///< "rho", "lambda:<file>" or a user JSON file
    std::string out_dir;         ///< empty: report on stdout only
    bool deep = false;
    bool svg = false;
    std::size_t seed_cap = 0;    ///< 0: ASSO_SEED_CAP or the built-in default
    unsigned threads = 1;
    bool universal = false;
    bool zonotope = false;
    int typea = 0;               ///< rank for the triangulation cross-check; 0 skips it
};

inline std::size_t effective_seed_cap(const RunConfig& cfg) { return cfg.seed_cap ? cfg.seed_cap : default_seed_cap(); }

/** Stage failure carrying its exit code. */
struct StageError : std::runtime_error {
    int code;
    StageError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

inline Json violations_json(const std::vector<Violation>& v, std::size_t limit = 20) {
    Json a = Json::array();
    for (std::size_t i = 0; i < v.size() && i < limit; ++i) a.push_back({{"seed", v[i].seed}, {"slot", v[i].slot}, {"what", v[i].what}});
    return a;
}

inline Json strings_json(const std::vector<std::string>& v, std::size_t limit = 20) {
    Json a = Json::array();
    for (std::size_t i = 0; i < v.size() && i < limit; ++i) a.push_back(v[i]);
    return a;
}

inline Json finite_type_stage(const IntMatrix& b) {
    FiniteTypeResult ft = is_finite_type(b);
    Json j;
    j["finite"] = ft.finite;
    if (!ft.finite) {
        j["reason"] = ft.reason;
        j["explored"] = ft.explored;
        j["pass"] = false;
        return j;
    }
    RootSystem rs = enumerate_roots(cartan_companion(ft.witness));
    j["type"] = ft.type;
    j["witness"] = ft.witness;
    j["word"] = ft.word;
    j["positive_roots"] = rs.positive.size();
    j["coxeter_number"] = to_string(rs.coxeter_number());
    j["pass"] = true;
    return j;
}

/** Cluster variable and c-vector counts against n(h+2)/2 and n h. */
inline Json counting_laws(const ExchangeGraph& g, std::size_t positive_roots) {
    const std::size_t n = g.rank();
    Rational h(2 * static_cast<Int>(positive_roots), static_cast<Int>(n));
    Rational vars = Rational(static_cast<Int>(n)) * (h + 2) / 2, cvecs = Rational(static_cast<Int>(n)) * h;
    Json j;
    j["h"] = to_string(h);
    j["variables"] = g.variables.size();
    j["expected_variables"] = to_string(vars);
    j["cvectors"] = g.cvectors.size();
    j["dual_cvectors"] = g.dual_cvectors.size();
    j["expected_cvectors"] = to_string(cvecs);
    j["pass"] = Rational(static_cast<Int>(g.variables.size())) == vars && Rational(static_cast<Int>(g.cvectors.size())) == cvecs &&
                Rational(static_cast<Int>(g.dual_cvectors.size())) == cvecs;
    return j;
}

inline Json algebra_stage(const ExchangeGraph& g, std::size_t positive_roots, unsigned threads) {
    auto sc = check_sign_coherence(g, threads);
    auto du = check_duality(g, threads);
    auto rt = check_cvector_roots(g);
    Json j;
    j["seeds"] = g.seeds.size();
    j["sign_coherence"] = {{"pass", sc.ok()}, {"violations", violations_json(sc.violations)}};
    j["duality"] = {{"pass", du.ok()}, {"violations", violations_json(du.violations)}};
    j["real_roots"] = {{"pass", rt.ok()}, {"violations", violations_json(rt.violations)}};
    j["counts"] = counting_laws(g, positive_roots);
    j["pass"] = sc.ok() && du.ok() && rt.ok() && j["counts"]["pass"].get<bool>();
    return j;
}

inline Json fan_stage(const ExchangeGraph& g, unsigned threads) {
    auto cert = verify_complete_fan(g, threads);
    auto co = check_coarsening(g);
    Rational max_coeff = 0;
    for (const auto& d : cert.dependences) {
        Rational a = abs(d.gamma), b = abs(d.gamma_prime);
        max_coeff = std::max({max_coeff, a, b});
    }
    std::size_t disjoint = std::count(cert.disjoint_from_base.begin(), cert.disjoint_from_base.end(), true);
    Json j;
    j["rays"] = g.variables.size();
    j["cones"] = g.seeds.size();
    j["edge_dependences"] = cert.dependences.size();
    j["max_dependence_coefficient"] = to_string(max_coeff);
    j["disjoint_from_base"] = disjoint;
    j["random_directions"] = cert.random_directions;
    j["random_hits"] = cert.random_hits;
    j["walls"] = co.walls;
    j["distinct_wall_normals"] = co.distinct_normals;
    j["failures"] = strings_json(cert.failures);
    j["coarsening_failures"] = strings_json(co.failures);
    j["pass"] = cert.ok() && co.ok();
    return j;
}

inline Json lift_stage(const ExchangeGraph& g, const LiftFunction& f) {
    auto r = check_exchange_submodular(f, g);
    bool positive = std::all_of(f.values.begin(), f.values.end(), [](const Rational& x) { return x > 0; });
    Json j;
    j["provenance"] = f.provenance;
    j["values"] = lift_to_json(f, g);
    j["positive"] = positive;
    j["edges"] = r.edges;
    j["worst_slack"] = to_string(r.worst_slack);
    j["violations"] = violations_json(r.violations);
    if (f.provenance == "rho" && is_bipartite(g.b0)) j["agrees_with_lambda_rho"] = f_lambda(g, rho_vee(g.rank())).values == f.values;
    j["pass"] = positive && r.ok();
    return j;
}

inline bool is_zero(const RatVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

inline Json associahedron_stage(const ExchangeGraph& g, const LiftFunction& f, const PolytopeRep& p, const EdgeVectorReport& ev) {
    bool graph = incidence_graph_matches(p, g);
    RatVector bc = barycenter(p);
    Json j;
    j["vertices"] = p.vertices.size();
    j["facets"] = p.halfspaces.size();
    j["incidence"] = true;
    j["graph_matches"] = graph;
    j["edges"] = ev.edges;
    j["edge_violations"] = violations_json(ev.violations);
    j["barycenter"] = to_json(bc);
    j["barycenter_zero"] = is_zero(bc);
    bool ok = graph && ev.ok();
    // the barycenter theorem covers the rho lift only
    if (f.provenance == "rho") ok = ok && is_zero(bc);
    j["pass"] = ok;
    return j;
}

inline Json green_stage(const ExchangeGraph& g, const EdgeVectorReport& ev) {
    GreenOrientation o = green_orientation(g);
    Json j;
    j["acyclic"] = o.acyclic;
    j["sources"] = o.sources;
    j["sinks"] = o.sinks;
    j["edges"] = ev.edges;
    j["direction_agreements"] = ev.green_agreements;
    j["pass"] = o.acyclic && o.sources == std::vector<std::size_t>{0} && o.sinks.size() == 1 && ev.green_agreements == ev.edges;
    return j;
}

inline Json hull_stats_json(const HullStats& s) {
    return {{"ambient", s.ambient},
            {"dimension", s.dimension},
            {"vertices", s.vertices},
            {"facets", s.facets},
            {"vertices_per_facet", {s.min_vertices_per_facet, s.max_vertices_per_facet}},
            {"facets_per_vertex", {s.min_facets_per_vertex, s.max_facets_per_vertex}}};
}

/** Reading against sorting, compared at the matrix the sorting walk ends on. */
inline Json universal_cross_construction(const IntMatrix& b) {
    Json j;
    if (!is_acyclic(b)) {
        j["applicable"] = false;
        return j;
    }
    try {
        UniversalSeedMatrix s = universal_matrix_sorting(b);
        j["applicable"] = true;
        j["final_matrix"] = s.b;
        j["rows"] = s.rows.size();
        j["match"] = same_rows(s.rows, universal_matrix_reading(s.b).rows);
    } catch (const std::invalid_argument& e) {
        j["applicable"] = false;
        j["reason"] = e.what();
    }
    return j;
}

inline Json universal_stage(const ExchangeGraph& g, const LiftFunction& f, bool with_hull, unsigned threads) {
    auto ua = build_universal_associahedron(g, f, with_hull);
    auto pr = projection_check(ua, g, f, threads);
    auto sp = coefficient_specialization_check(g, false, threads);
    auto sd = coefficient_specialization_check(g, true, threads);
    auto ub = universal_barycenter(ua, g);
    Json j;
    j["row_labels"] = ua.graph.initial.labels;
    Json pts = Json::array();
    for (const auto& p : ua.points) pts.push_back(to_json(p));
    j["points"] = std::move(pts);
    if (ua.stats) {
        j["hull"] = hull_stats_json(*ua.stats);
        // observed, not required
        j["codimension_one"] = ua.stats->dimension + 1 == ua.stats->ambient;
    }
    j["projection"] = {{"seeds", pr.seeds_checked}, {"pass", pr.ok()}, {"failures", strings_json(pr.failures)}};
    j["specialization"] = {{"pass", sp.ok() && sd.ok()}, {"failures", strings_json(sp.failures)}, {"dual_failures", strings_json(sd.failures)}};
    j["barycenter_zero"] = ub.zero;
    j["projections_commute"] = ub.projections_commute;
    Json cross = universal_cross_construction(g.b0);
    j["cross_construction"] = cross;
    bool ok = pr.ok() && sp.ok() && sd.ok() && ub.projections_commute;
    if (f.provenance == "rho") ok = ok && ub.zero;
    if (cross.value("applicable", false)) ok = ok && cross["match"].get<bool>();
    j["pass"] = ok;
    return j;
}

inline Json zonotope_stage(const ExchangeGraph& g, const LiftFunction& f, const PolytopeRep& p) {
    ZonotopeRep z = build_zonotope(g.dual_cvectors);
    auto ineq = inequalities(p);
    auto cz = containment_check(ineq, zonotope_oracle(z));
    Json fails = Json::array();
    for (std::size_t i = 0; i < cz.failed.size(); ++i) {
        const auto& q = ineq[cz.failed[i]];
        fails.push_back({{"normal", p.halfspaces[cz.failed[i]].normal}, {"associahedron_rhs", to_string(q.rhs)}, {"zonotope_rhs", to_string(z.rhs(q.normal))},
                         {"reason", cz.reasons[i]}});
    }
    auto gf = zonotope_gamma_feasibility(g, f);
    auto gs = zonotope_gamma_feasibility(g, f, true);
    Json j;
    j["generators"] = z.generators.size();
    j["unit_gamma_containment"] = {{"checked", cz.checked}, {"holds", cz.ok()}, {"failures", fails}};
    Json gamma = {{"feasible", gf.feasible}};
    if (gf.feasible) gamma["witness"] = to_json(RatVector(gf.gamma));
    j["gamma"] = gamma;
    Json conflicts = Json::array();
    for (const auto& c : gs.opposite_conflicts)
        conflicts.push_back({{"g", c.gx}, {"opposite", c.gy}, {"F", to_string(c.fx)}, {"F_opposite", to_string(c.fy)}});
    j["symmetric_gamma"] = {{"feasible", gs.feasible}, {"opposite_conflicts", conflicts}};
    // verdicts are data; the stage only fails on internal errors
    j["pass"] = true;
    return j;
}

inline Json typea_stage(int n, unsigned threads) {
    TypeAReport r = typeA_crosscheck(n, threads);
    Json cases = Json::array();
    for (const auto& c : r.cases) {
        Json d = Json::array();
        for (const auto& [a, b] : c.reference.diagonals) d.push_back({a, b});
        cases.push_back({{"reference", d},
                         {"seeds", c.seeds},
                         {"flip_graph", c.flip_graph},
                         {"vectors", c.vectors},
                         {"lift", c.lift},
                         {"containments", c.containments},
                         {"barycenter", c.barycenter},
                         {"failures", strings_json(c.failures)}});
    }
    Json j;
    j["n"] = n;
    j["expected_seeds"] = catalan(static_cast<std::size_t>(n) + 1);
    j["cases"] = std::move(cases);
    j["pass"] = r.ok();
    return j;
}

/** Stereographic drawing of a rank 3 g-vector fan. */
inline std::string fan_svg(const ExchangeGraph& g, const SvgOptions& opt = {}) {
    if (g.rank() != 3) throw std::invalid_argument("drawing needs a rank 3 fan");
    std::set<std::pair<std::size_t, std::size_t>> arcs;
    for (const auto& cone : g.var)
        for (std::size_t i = 0; i < cone.size(); ++i)
            for (std::size_t j = i + 1; j < cone.size(); ++j) arcs.insert(std::minmax(cone[i], cone[j]));
    return stereographic_svg(g.variables, {arcs.begin(), arcs.end()}, opt);
}

inline Json halfspaces_json(const PolytopeRep& p) {
    Json a = Json::array();
    for (const auto& h : p.halfspaces) a.push_back({{"normal", h.normal}, {"rhs", to_string(h.rhs)}});
    return a;
}

struct RunResult {
    int code = exit_ok;
    Json report;
};

/**
 * Runs every stage in order and stops at the first failure. The report
 * carries no timings or thread counts so that it is reproducible.
 */
inline RunResult run_pipeline(const RunConfig& cfg) {
    RunResult res;
    Json& rep = res.report;
    Json stages = Json::object();
    auto finish = [&](int code, const std::string& stage, const std::string& why) {
        res.code = code;
        rep["stages"] = stages;
        rep["failed_stage"] = stage;
        if (!why.empty()) rep["error"] = why;
        rep["exit_code"] = code;
        return res;
    };
    ExchangeMatrix em;
    try {
        em = load_matrix(cfg.matrix);
    } catch (const std::exception& e) {
        return finish(exit_usage, "input", e.what());
    }
    rep["matrix"] = em.b;
    rep["symmetrizer"] = em.d;
    rep["lift_source"] = cfg.lift;

    Json ft;
    try {
        ft = finite_type_stage(em.b);
    } catch (const std::exception& e) {
        return finish(exit_finite_type, "finite_type", e.what());
    }
    stages["finite_type"] = ft;
    if (!ft["pass"].get<bool>()) return finish(exit_finite_type, "finite_type", "");

    ExchangeGraph g;
    try {
        g = enumerate_exchange_graph(em.b, effective_seed_cap(cfg));
    } catch (const std::exception& e) {
        return finish(exit_enumerate, "enumerate", e.what());
    }
    stages["enumerate"] = {{"seeds", g.seeds.size()}, {"variables", g.variables.size()}, {"pass", true}};

    auto stage = [&](const char* name, int code, auto&& body) {
        try {
            stages[name] = body();
        } catch (const std::exception& e) {
            throw StageError(code, e.what());
        }
        if (!stages[name]["pass"].get<bool>()) throw StageError(code, "");
    };
    const char* current = "algebra";
    try {
        stage("algebra", exit_algebra, [&] { return algebra_stage(g, ft["positive_roots"].get<std::size_t>(), cfg.threads); });
        current = "fan";
        stage("fan", exit_fan, [&] { return fan_stage(g, cfg.threads); });
        current = "lift";
        LiftFunction f;
        stage("lift", exit_lift, [&] {
            f = load_lift(cfg.lift, g, cfg.threads);
            return lift_stage(g, f);
        });
        current = "associahedron";
        PolytopeRep p;
        EdgeVectorReport ev;
        stage("associahedron", exit_associahedron, [&] {
            p = build_associahedron(g, f, cfg.threads);
            ev = edge_vector_check(p, g, f);
            return associahedron_stage(g, f, p, ev);
        });
        current = "green";
        stage("green", exit_green, [&] { return green_stage(g, ev); });
        if (cfg.universal) {
            current = "universal";
            stage("universal", exit_universal, [&] { return universal_stage(g, f, g.rank() <= 3 || cfg.deep, cfg.threads); });
        }
        if (cfg.zonotope) {
            current = "zonotope";
            stage("zonotope", exit_zonotope, [&] { return zonotope_stage(g, f, p); });
        }
        if (cfg.typea > 0) {
            current = "typea";
            stage("typea", exit_typea, [&] { return typea_stage(cfg.typea, cfg.threads); });
        }
        if (!cfg.out_dir.empty()) {
            std::filesystem::create_directories(cfg.out_dir);
            const std::filesystem::path dir(cfg.out_dir);
            write_file((dir / "graph.json").string(), graph_to_json(g, ft["type"].get<std::string>()).dump(1) + "\n");
            write_file((dir / "halfspaces.json").string(), halfspaces_json(p).dump(1) + "\n");
            if (g.rank() == 3) {
                write_file((dir / "associahedron.off").string(), export_off(p, g));
                if (cfg.svg) write_file((dir / "fan.svg").string(), fan_svg(g));
            }
        }
    } catch (const StageError& e) {
        return finish(e.code, current, e.what());
    }
    rep["stages"] = stages;
    rep["exit_code"] = 0;
    return res;
}

} // namespace asso

#endif
