#include "asso/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace asso;

namespace {

struct Common {
    std::string matrix;
    std::string lift = "rho";
    std::string out;
    std::size_t seed_cap = 0;
    unsigned threads = 1;
    bool deep = false;
};

void add_matrix(CLI::App* app, Common& c) {
    app->add_option("--matrix,-m", c.matrix, "builtin name, JSON file, or inline rows like [[0,1],[-1,0]]")->required();
    app->add_option("--seed-cap", c.seed_cap, "abort enumeration beyond this many seeds");
    app->add_option("--threads,-j", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

void add_lift(CLI::App* app, Common& c) { app->add_option("--F", c.lift, "rho, lambda:<file>, or a JSON file of values"); }

void add_out(CLI::App* app, Common& c, const std::string& what) { app->add_option("--out,-o", c.out, what); }

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) std::cout << text;
    else write_file(c.out, text);
}

void emit(const Common& c, const Json& j) { emit(c, j.dump(1) + "\n"); }

struct Loaded {
    ExchangeMatrix em;
    ExchangeGraph g;
    std::string type;
};

Loaded load(const Common& c) {
    Loaded l;
    l.em = load_matrix(c.matrix);
    auto ft = is_finite_type(l.em.b);
    if (!ft.finite) throw StageError(exit_finite_type, "not of finite type: " + ft.reason);
    l.type = ft.type;
    try {
        l.g = enumerate_exchange_graph(l.em.b, c.seed_cap ? c.seed_cap : default_seed_cap());
    } catch (const std::exception& e) {
        throw StageError(exit_enumerate, e.what());
    }
    return l;
}

LiftFunction checked_lift(const Common& c, const ExchangeGraph& g) {
    LiftFunction f;
    try {
        f = load_lift(c.lift, g, c.threads);
    } catch (const std::exception& e) {
        throw StageError(exit_lift, e.what());
    }
    Json j = lift_stage(g, f);
    if (!j["pass"].get<bool>()) throw StageError(exit_lift, "lift function is not exchange submodular: " + j["violations"].dump());
    return f;
}

PolytopeRep checked_polytope(const Common& c, const ExchangeGraph& g, const LiftFunction& f) {
    try {
        return build_associahedron(g, f, c.threads);
    } catch (const std::exception& e) {
        throw StageError(exit_associahedron, e.what());
    }
}

int run_checked(const std::function<int()>& body) {
    try {
        return body();
    } catch (const StageError& e) {
        std::cerr << "asso: " << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "asso: " << e.what() << "\n";
        return exit_usage;
    }
}

Vec3 parse_pole(const std::string& s) {
    Vec3 v{};
    std::stringstream in(s);
    std::string part;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!std::getline(in, part, ',')) throw std::invalid_argument("pole needs three comma separated numbers");
        v[i] = std::stod(part);
    }
    return v;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of finite type cluster algebras and their generalized associahedra"};
    app.require_subcommand(1);
    int code = exit_ok;

    RunConfig cfg;
    auto* run = app.add_subcommand("run", "run every stage and print a JSON report");
    run->add_option("--matrix,-m", cfg.matrix, "builtin name, JSON file, or inline rows")->required();
    run->add_option("--F", cfg.lift, "rho, lambda:<file>, or a JSON file of values");
    run->add_option("--out,-o", cfg.out_dir, "directory for report.json and artifacts");
    run->add_option("--seed-cap", cfg.seed_cap, "abort enumeration beyond this many seeds");
    run->add_option("--threads,-j", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    run->add_flag("--deep", cfg.deep, "allow convex hulls in rank 4 and above");
    run->add_flag("--svg", cfg.svg, "also draw the fan (rank 3)");
    run->add_flag("--universal", cfg.universal, "universal associahedron stage");
    run->add_flag("--zonotope", cfg.zonotope, "zonotope comparison stage");
    run->add_option("--typea", cfg.typea, "triangulation cross-check up to this rank");
    run->callback([&] {
        code = run_checked([&]() -> int {
            RunResult r = run_pipeline(cfg);
            std::string text = r.report.dump(1) + "\n";
            if (cfg.out_dir.empty()) {
                std::cout << text;
            } else {
                std::filesystem::create_directories(cfg.out_dir);
                write_file((std::filesystem::path(cfg.out_dir) / "report.json").string(), text);
            }
            return r.code;
        });
    });

    Common en;
    auto* enumerate = app.add_subcommand("enumerate", "dump the exchange graph as JSON");
    add_matrix(enumerate, en);
    add_out(enumerate, en, "output file");
    enumerate->callback([&] {
        code = run_checked([&]() -> int {
            Loaded l = load(en);
            emit(en, graph_to_json(l.g, l.type));
            return exit_ok;
        });
    });

    Common fc;
    std::string fan_svg_path;
    auto* fan = app.add_subcommand("fan-check", "certify the g-vector fan");
    add_matrix(fan, fc);
    add_out(fan, fc, "certificate file");
    fan->add_option("--svg", fan_svg_path, "write a stereographic drawing (rank 3)");
    fan->callback([&] {
        code = run_checked([&]() -> int {
            Loaded l = load(fc);
            auto cert = verify_complete_fan(l.g, fc.threads);
            Json j = fan_cert_to_json(cert);
            j["summary"] = fan_stage(l.g, fc.threads);
            emit(fc, j);
            if (!fan_svg_path.empty()) write_file(fan_svg_path, fan_svg(l.g));
            return j["summary"]["pass"].get<bool>() ? exit_ok : exit_fan;
        });
    });

    auto* asso_cmd = app.add_subcommand("asso", "generalized associahedron");
    asso_cmd->require_subcommand(1);
    Common ab;
    auto* build = asso_cmd->add_subcommand("build", "halfspaces and vertices as JSON");
    add_matrix(build, ab);
    add_lift(build, ab);
    add_out(build, ab, "output file");
    build->callback([&] {
        code = run_checked([&]() -> int {
            Loaded l = load(ab);
            LiftFunction f = checked_lift(ab, l.g);
            PolytopeRep p = checked_polytope(ab, l.g, f);
            Json j;
            j["halfspaces"] = halfspaces_json(p);
            Json v = Json::array();
            for (const auto& x : p.vertices) v.push_back(to_json(x));
            j["vertices"] = std::move(v);
            j["incidence"] = p.incidence;
            emit(ab, j);
            return exit_ok;
        });
    });
    Common ac;
    auto* check = asso_cmd->add_subcommand("check", "incidence, edge directions, barycenter and green orientation");
    add_matrix(check, ac);
    add_lift(check, ac);
    add_out(check, ac, "report file");
    check->callback([&] {
        code = run_checked([&]() -> int {
            Loaded l = load(ac);
            LiftFunction f = checked_lift(ac, l.g);
            PolytopeRep p = checked_polytope(ac, l.g, f);
            EdgeVectorReport ev = edge_vector_check(p, l.g, f);
            Json j;
            j["associahedron"] = associahedron_stage(l.g, f, p, ev);
            j["green"] = green_stage(l.g, ev);
            emit(ac, j);
            if (!j["associahedron"]["pass"].get<bool>()) return exit_associahedron;
            return j["green"]["pass"].get<bool>() ? exit_ok : exit_green;
        });
    });
    Common ae;
    std::string format = "off";
    auto* exp = asso_cmd->add_subcommand("export", "write the associahedron as OFF (rank 3) or JSON halfspaces");
    add_matrix(exp, ae);
    add_lift(exp, ae);
    add_out(exp, ae, "output file");
    exp->add_option("--format", format, "off or json")->check(CLI::IsMember({"off", "json"}));
    exp->callback([&] {
        code = run_checked([&]() -> int {
            Loaded l = load(ae);
            LiftFunction f = checked_lift(ae, l.g);
            PolytopeRep p = checked_polytope(ae, l.g, f);
            if (format == "off") emit(ae, export_off(p, l.g));
            else emit(ae, halfspaces_json(p));
            return exit_ok;
        });
    });

    auto* uni = app.add_subcommand("universal", "universal associahedron");
    uni->require_subcommand(1);
    Common ub;
    auto* ubuild = uni->add_subcommand("build", "vertices and universal row labels");
    add_matrix(ubuild, ub);
    add_lift(ubuild, ub);
    add_out(ubuild, ub, "output file");
    ubuild->callback([&] {
        code = run_checked([&]() -> int {
            Loaded l = load(ub);
            LiftFunction f = checked_lift(ub, l.g);
            auto ua = build_universal_associahedron(l.g, f, false);
            Json j;
            j["row_labels"] = ua.graph.initial.labels;
            j["initial_rows"] = ua.graph.initial.rows;
            Json pts = Json::array();
            for (const auto& p : ua.points) pts.push_back(to_json(p));
            j["points"] = std::move(pts);
            emit(ub, j);
            return exit_ok;
        });
    });
    Common us;
    auto* ustats = uni->add_subcommand("stats", "convex hull statistics");
    add_matrix(ustats, us);
    add_lift(ustats, us);
    add_out(ustats, us, "output file");
    ustats->add_flag("--deep", us.deep, "allow rank 4 and above");
    ustats->callback([&] {
        code = run_checked([&]() -> int {
            Loaded l = load(us);
            if (l.g.rank() > 3 && !us.deep) throw std::invalid_argument("hulls in rank 4 and above need --deep");
            LiftFunction f = checked_lift(us, l.g);
            auto ua = build_universal_associahedron(l.g, f, true);
            emit(us, hull_stats_json(*ua.stats));
            return exit_ok;
        });
    });
    Common up;
    auto* uproj = uni->add_subcommand("project", "projection and coefficient specialization checks");
    add_matrix(uproj, up);
    add_lift(uproj, up);
    add_out(uproj, up, "report file");
    uproj->callback([&] {
        code = run_checked([&]() -> int {
            Loaded l = load(up);
            LiftFunction f = checked_lift(up, l.g);
            Json j = universal_stage(l.g, f, false, up.threads);
            j.erase("points");
            emit(up, j);
            return j["pass"].get<bool>() ? exit_ok : exit_universal;
        });
    });

    auto* zono = app.add_subcommand("zonotope", "zonotope comparison");
    zono->require_subcommand(1);
    Common zc;
    auto* zcheck = zono->add_subcommand("check", "containment with unit multiplicities and multiplicity feasibility");
    add_matrix(zcheck, zc);
    add_lift(zcheck, zc);
    add_out(zcheck, zc, "report file");
    zcheck->callback([&] {
        code = run_checked([&]() -> int {
            Loaded l = load(zc);
            LiftFunction f = checked_lift(zc, l.g);
            PolytopeRep p = checked_polytope(zc, l.g, f);
            emit(zc, zonotope_stage(l.g, f, p));
            return exit_ok;
        });
    });

    auto* ta = app.add_subcommand("typea", "triangulation model");
    ta->require_subcommand(1);
    Common tc;
    int ta_n = 4;
    auto* cross = ta->add_subcommand("crosscheck", "compare shear coordinates with the algebraic engine");
    cross->add_option("--n", ta_n, "rank")->check(CLI::Range(1, 8));
    cross->add_option("--threads,-j", tc.threads, "worker threads")->check(CLI::PositiveNumber);
    add_out(cross, tc, "report file");
    cross->callback([&] {
        code = run_checked([&]() -> int {
            Json j = typea_stage(ta_n, tc.threads);
            emit(tc, j);
            return j["pass"].get<bool>() ? exit_ok : exit_typea;
        });
    });

    Common sv;
    std::string pole = "-1,-1,-1";
    bool no_labels = false;
    auto* svg = app.add_subcommand("svg", "stereographic drawing of a rank 3 g-vector fan");
    add_matrix(svg, sv);
    add_out(svg, sv, "output file");
    svg->add_option("--pole", pole, "projection pole x,y,z");
    svg->add_flag("--no-labels", no_labels, "omit ray labels");
    svg->callback([&] {
        code = run_checked([&]() -> int {
            Loaded l = load(sv);
            SvgOptions opt;
            opt.pole = parse_pole(pole);
            opt.labels = !no_labels;
            emit(sv, fan_svg(l.g, opt));
            return exit_ok;
        });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    return code;
}
