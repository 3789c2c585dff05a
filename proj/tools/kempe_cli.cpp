// Command-line front end. Every subcommand prints a JSON run report.
//
// Exit status: 0 success, 1 invariant violation (a bug), 2 usage or input
// error, 3 budget exceeded. Each flag can also be set through an environment
// variable named KEMPE_<FLAG>, e.g. KEMPE_THREADS=4.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "acceptance_suite.hpp"
#include "kempe/constructions.hpp"
#include "kempe/degree.hpp"
#include "kempe/dynamics.hpp"
#include "kempe/errors.hpp"
#include "kempe/grid_io.hpp"
#include "kempe/ns_structure.hpp"
#include "kempe/state_space.hpp"

using json = nlohmann::ordered_json;
using namespace kempe;

namespace {

struct Args {
    std::string tri = "T(6,6,0)";
    int q = 4;
    int L = 0, M = 0;
    long steps = 100;
    std::uint64_t seed = 1;
    int threads = 0;
    std::uint64_t budget_nodes = 0, budget_states = 0, budget_mem = 0;
    std::string spill_dir;
    std::string out;
    std::string trace;
    std::string grid, grid_out, moves_out, reps_dir;
    std::string method = "auto";
    bool serial = false;
    bool full = false;
};

Triangulation tri_of(const std::string& d) {
    auto [r, s, t] = parse_descriptor(d);
    return Triangulation::build(r, s, t);
}

json histogram_json(const std::map<long, std::uint64_t>& h) {
    json j = json::object();
    for (auto [d, c] : h) j[std::to_string(d)] = c;
    return j;
}

json coord_list(const std::vector<Coord>& cs) {
    json a = json::array();
    for (auto c : cs) a.push_back({c.x, c.y});
    return a;
}

json degree_json(const Triangulation& T, const Coloring& c) {
    DegreeReport d = degree(T, c);
    json j = {{"degree", d.degree}, {"degree_abs", d.degree_abs}, {"p", d.p}, {"n", d.n}, {"mod12", d.mod12}};
    if (is_three_colorable(T.r(), T.s(), T.t())) j["label"] = degree_residue_checks(T, c).label;
    return j;
}

EnumOptions enum_options(const Args& a) {
    EnumOptions o;
    o.threads = a.threads;
    o.budget_nodes = a.budget_nodes;
    o.budget_states = a.budget_states;
    o.budget_mem = a.budget_mem;
    o.spill_dir = a.spill_dir;
    return o;
}

Coloring load_grid(const std::string& path) {
    if (path.empty()) throw CLI::ValidationError("--grid", "a grid file is required");
    return read_grid_file(path);
}

json cmd_build(const Args& a) {
    Triangulation T = tri_of(a.tri);
    bool three = is_three_colorable(T.r(), T.s(), T.t());
    json j = {{"triangulation", T.descriptor()}, {"vertices", T.num_vertices()}, {"edges", T.num_edges()}, {"faces", T.num_faces()}, {"three_colorable", three}};
    if (three && !a.grid_out.empty()) {
        write_grid_file(a.grid_out, three_coloring(T));
        j["three_coloring_file"] = a.grid_out;
    }
    return j;
}

json cmd_enumerate(const Args& a, json& counters) {
    Triangulation T = tri_of(a.tri);
    EnumOptions o = enum_options(a);
    EnumerationResult r = a.serial ? enumerate_colorings_serial(T, a.q, o) : enumerate_colorings(T, a.q, o);
    counters["nodes"] = r.nodes;
    counters["states"] = r.total;
    json j = {{"triangulation", T.descriptor()}, {"total", r.total}};
    if (a.q == 4) j["histogram"] = histogram_json(r.histogram);
    return j;
}

ClassMethod method_of(const std::string& m) {
    if (m == "auto") return ClassMethod::Auto;
    if (m == "bfs") return ClassMethod::Bfs;
    if (m == "union-find") return ClassMethod::UnionFind;
    if (m == "certificate") return ClassMethod::Certificate;
    throw CLI::ValidationError("--method", "unknown method " + m);
}

json cmd_classes(const Args& a, json& counters) {
    Triangulation T = tri_of(a.tri);
    ClassOptions o;
    o.enumeration = enum_options(a);
    o.method = method_of(a.method);
    ClassDecomposition cd = kempe_classes(T, a.q, o);
    counters["states"] = cd.total;
    counters["edges_examined"] = cd.edges_examined;
    json classes = json::array();
    for (std::size_t i = 0; i < cd.classes.size(); ++i) {
        const KempeClass& k = cd.classes[i];
        json c = {{"size", k.size}, {"residues", k.residues}};
        if (a.q == 4) c["degrees"] = histogram_json(k.degrees);
        if (!k.representative.a.empty()) {
            if (!a.reps_dir.empty()) {
                std::string f = a.reps_dir + "/class" + std::to_string(i) + ".grid";
                write_grid_file(f, k.representative);
                c["representative_file"] = f;
            } else {
                c["representative"] = grid_string(k.representative);
            }
        }
        classes.push_back(c);
    }
    return {{"triangulation", T.descriptor()}, {"total", cd.total}, {"num_classes", cd.classes.size()}, {"method", cd.method}, {"classes", classes}};
}

json cmd_construct(const Args& a) {
    if (a.L < 2) throw CLI::ValidationError("--L", "L must be at least 2");
    const int M = a.M ? a.M : (a.L == 2 ? 2 : a.L);
    json j;
    Coloring c;
    if (a.L >= 3 && M == a.L) {
        auto [col, tr] = construct_deg6_symmetric(a.L, {true, !a.trace.empty()});
        c = col;
        json steps = json::array();
        for (const auto& s : tr.steps)
            steps.push_back({{"label", s.label},
                             {"diagonals", s.diagonals},
                             {"partial_degree", s.partial_degree},
                             {"exceptions", coord_list(s.exceptions)},
                             {"free", coord_list(s.free)}});
        j["family"] = tr.family;
        j["k"] = tr.k;
        if (!a.trace.empty()) {
            std::ofstream f(a.trace);
            for (const auto& s : tr.steps) {
                f << "# " << s.label << " partial degree " << s.partial_degree << "\n";
                PartialGrid g{c.r, c.s, 0, 4, s.snapshot};
                for (int y = 1; y <= c.s; ++y) {
                    for (int x = 1; x <= c.r; ++x) f << g.colors[(y - 1) * c.r + x - 1];
                    f << "\n";
                }
            }
        }
        j["steps"] = steps;
    } else {
        c = construct_deg6(a.L, M);
    }
    Triangulation T = Triangulation::build(c.r, c.s, c.t);
    if (!is_proper(T, c)) throw InvariantViolation("construction is not proper");
    if (!a.grid_out.empty()) write_grid_file(a.grid_out, c);
    j["triangulation"] = T.descriptor();
    j["degree"] = degree_json(T, c);
    if (a.grid_out.empty()) j["grid"] = grid_string(c);
    else j["grid_file"] = a.grid_out;
    return j;
}

json cmd_wsk(const Args& a) {
    Coloring c;
    Triangulation T;
    if (!a.grid.empty()) {
        c = read_grid_file(a.grid);
        T = Triangulation::build(c.r, c.s, c.t);
    } else {
        T = tri_of(a.tri);
        c = three_coloring(T);
    }
    std::ofstream file;
    std::ostream* csv = &std::cout;
    if (!a.trace.empty()) {
        file.open(a.trace);
        if (!file) throw std::invalid_argument("cannot write " + a.trace);
        csv = &file;
    }
    Rng rng(a.seed);
    *csv << "step,a,b,components,swapped,degree\n";
    const int start_mod12 = degree(T, c).mod12;
    for (long i = 1; i <= a.steps; ++i) {
        WskTrace tr;
        c = wsk_step(T, c, rng, &tr);
        DegreeReport d = degree(T, c);
        if (d.mod12 != start_mod12) throw InvariantViolation("degree mod 12 changed along the chain");
        *csv << i << ',' << tr.a << ',' << tr.b << ',' << tr.components << ',' << tr.swapped << ',' << d.degree << '\n';
    }
    if (!a.grid_out.empty()) write_grid_file(a.grid_out, c);
    return {{"triangulation", T.descriptor()}, {"steps", a.steps}, {"final_degree", degree_json(T, c)}, {"final", grid_string(c)}};
}

json cmd_degree(const Args& a) {
    Coloring c = load_grid(a.grid);
    Triangulation T = Triangulation::build(c.r, c.s, c.t);
    if (!is_proper(T, c)) throw std::invalid_argument("grid is not a proper coloring");
    json j = degree_json(T, c);
    j["triangulation"] = T.descriptor();
    return j;
}

json cmd_reduce(const Args& a) {
    Coloring c = load_grid(a.grid);
    Triangulation T = Triangulation::build(c.r, c.s, c.t);
    if (!is_proper(T, c)) throw std::invalid_argument("grid is not a proper coloring");
    ReductionResult r = ns_minimal_reduce(T, c);
    StructureReport s = check_ns_minimal_structure(T, r.coloring);
    json moves = json::array();
    for (const auto& m : r.moves) moves.push_back({{"a", m.a}, {"b", m.b}, {"component", m.component}});
    if (!a.moves_out.empty()) {
        std::ofstream f(a.moves_out);
        f << moves.dump(1) << "\n";
    }
    if (!a.grid_out.empty()) write_grid_file(a.grid_out, r.coloring);
    json steps = json::array();
    for (const auto& st : r.steps)
        steps.push_back({{"kind", st.kind}, {"pair", {st.i, st.j}}, {"region_faces", st.region_faces},
                         {"swapped_vertices", st.swapped_vertices}, {"ns_before", st.ns_before}, {"ns_after", st.ns_after}});
    json hom = json::array();
    for (int p = 0; p < 6; ++p) hom.push_back({s.homotopy[p].a, s.homotopy[p].b});
    json j = {{"steps", steps},
              {"moves", r.moves.size()},
              {"structure",
               {{"trivial", s.trivial}, {"ok", s.ok}, {"failures", s.failures}, {"cycle_counts", s.cycle_counts},
                {"homotopy", hom}, {"algcr_abs", s.algcr_abs}, {"degree", s.degree}}}};
    if (a.grid_out.empty()) j["reduced"] = grid_string(r.coloring);
    if (a.moves_out.empty()) j["move_log"] = moves;
    if (!s.ok) throw InvariantViolation("reduced coloring fails the NS-minimal structure check");
    return j;
}

json cmd_verify(const Args& a, bool& ok) {
    auto level = a.full ? acceptance::Level::Full : acceptance::Level::Quick;
    auto res = acceptance::run(level, std::cerr, a.threads);
    ok = acceptance::all_passed(res);
    json items = json::array();
    for (const auto& o : res) items.push_back({{"id", o.id}, {"name", o.name}, {"status", o.status}, {"detail", o.detail}});
    return {{"level", a.full ? "full" : "quick"}, {"passed", ok}, {"criteria", items}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kempe dynamics on torus triangulations"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    Args a;
    app.add_option("--threads", a.threads, "worker threads (0 = default)")->envname("KEMPE_THREADS");
    app.add_option("--out", a.out, "write the JSON report here instead of stdout")->envname("KEMPE_OUT");

    auto tri_opt = [&](CLI::App* s) { s->add_option("--tri", a.tri, "triangulation, e.g. \"T(6,6,0)\"")->envname("KEMPE_TRI"); };
    auto budget_opts = [&](CLI::App* s) {
        s->add_option("--q", a.q, "number of colors")->envname("KEMPE_Q");
        s->add_option("--budget-nodes", a.budget_nodes, "search node limit")->envname("KEMPE_BUDGET_NODES");
        s->add_option("--budget-states", a.budget_states, "state limit")->envname("KEMPE_BUDGET_STATES");
        s->add_option("--budget-mem", a.budget_mem, "bytes of in-memory state keys")->envname("KEMPE_BUDGET_MEM");
        s->add_option("--spill-dir", a.spill_dir, "directory for sorted key runs")->envname("KEMPE_SPILL_DIR");
    };

    auto* build = app.add_subcommand("build", "construct T(r,s,t) and report its size");
    tri_opt(build);
    build->add_option("--grid-out", a.grid_out, "write the 3-coloring here when one exists")->envname("KEMPE_GRID_OUT");

    auto* en = app.add_subcommand("enumerate", "count canonical proper colorings");
    tri_opt(en);
    budget_opts(en);
    en->add_flag("--serial", a.serial, "use the serial reference search")->envname("KEMPE_SERIAL");

    auto* cl = app.add_subcommand("classes", "decompose the colorings into Kempe classes");
    tri_opt(cl);
    budget_opts(cl);
    cl->add_option("--method", a.method, "auto, bfs, union-find or certificate")->envname("KEMPE_METHOD");
    cl->add_option("--reps-dir", a.reps_dir, "write class representatives as grid files")->envname("KEMPE_REPS_DIR");

    auto* co = app.add_subcommand("construct", "build a coloring of degree 6 mod 12");
    co->add_option("--L", a.L, "width parameter L")->required()->envname("KEMPE_L");
    co->add_option("--M", a.M, "height parameter M (default L, or 2 when L = 2)")->envname("KEMPE_M");
    co->add_option("--grid-out", a.grid_out, "output grid file")->envname("KEMPE_GRID_OUT");
    co->add_option("--trace", a.trace, "write per-step snapshots here")->envname("KEMPE_TRACE");

    auto* wk = app.add_subcommand("wsk", "run zero-temperature WSK steps");
    tri_opt(wk);
    wk->add_option("--grid", a.grid, "start from this grid instead of the 3-coloring")->envname("KEMPE_GRID");
    wk->add_option("--steps", a.steps, "number of steps")->envname("KEMPE_STEPS");
    wk->add_option("--seed", a.seed, "random seed")->envname("KEMPE_SEED");
    wk->add_option("--trace", a.trace, "CSV trajectory file (default stdout, report then needs --out)")->envname("KEMPE_TRACE");
    wk->add_option("--grid-out", a.grid_out, "write the final coloring here")->envname("KEMPE_GRID_OUT");

    auto* dg = app.add_subcommand("degree", "degree of a coloring");
    dg->add_option("--grid", a.grid, "grid file")->required()->envname("KEMPE_GRID");

    auto* rd = app.add_subcommand("reduce", "reduce a coloring to an NS-minimal one");
    rd->add_option("--grid", a.grid, "grid file")->required()->envname("KEMPE_GRID");
    rd->add_option("--grid-out", a.grid_out, "reduced grid file")->envname("KEMPE_GRID_OUT");
    rd->add_option("--moves", a.moves_out, "K-change log (JSON)")->envname("KEMPE_MOVES");

    auto* vf = app.add_subcommand("verify", "run the acceptance checks");
    vf->add_flag("--full", a.full, "include the long T(6,9) run")->envname("KEMPE_FULL");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    auto* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    json report = {{"command", cmd}};
    json params = json::object();
    for (const CLI::Option* o : sub->get_options()) {
        if (o->get_name() == "--help" || o->count() == 0) continue;
        auto r = o->results();
        params[o->get_name().substr(2)] = r.size() == 1 ? json(r[0]) : json(r);
    }
    if (a.threads) params["threads"] = a.threads;
    report["parameters"] = params;
    if (cmd == "wsk") report["seed"] = a.seed;

    json counters = json::object();
    bool ok = true;
    auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        json res;
        if (cmd == "build") res = cmd_build(a);
        else if (cmd == "enumerate") res = cmd_enumerate(a, counters);
        else if (cmd == "classes") res = cmd_classes(a, counters);
        else if (cmd == "construct") res = cmd_construct(a);
        else if (cmd == "wsk") res = cmd_wsk(a);
        else if (cmd == "degree") res = cmd_degree(a);
        else if (cmd == "reduce") res = cmd_reduce(a);
        else res = cmd_verify(a, ok);
        if (res.contains("triangulation")) {
            report["triangulation"] = res["triangulation"];
            res.erase("triangulation");
        }
        report["results"] = res;
        if (!ok) rc = 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        report["error"] = e.what();
        rc = 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report["counters"] = counters;

    // wsk with the CSV on stdout only writes a report file.
    const bool csv_on_stdout = cmd == "wsk" && a.trace.empty();
    if (!a.out.empty()) {
        std::ofstream f(a.out);
        f << report.dump(2) << "\n";
    } else if (!csv_on_stdout) {
        std::cout << report.dump(2) << "\n";
    }
    return rc;
}
