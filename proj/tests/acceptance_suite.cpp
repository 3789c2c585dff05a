#include "acceptance_suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "kempe/constructions.hpp"
#include "kempe/degree.hpp"
#include "kempe/dynamics.hpp"
#include "kempe/grid_io.hpp"
#include "kempe/ns_structure.hpp"
#include "kempe/state_space.hpp"
#include "oracles.hpp"

namespace kempe::acceptance {

std::string fixture_path(const std::string& name) { return std::string(KEMPE_FIXTURE_DIR) + "/" + name; }

namespace {

// Thrown by check() to fail the running criterion with a message.
struct Failed {
    std::string why;
};

void check(bool ok, const std::string& why) {
    if (!ok) throw Failed{why};
}

std::string hist_str(const std::map<long, std::uint64_t>& h) {
    std::ostringstream o;
    o << "{";
    bool first = true;
    for (auto [d, c] : h) {
        o << (first ? "" : ", ") << d << ": " << c;
        first = false;
    }
    o << "}";
    return o.str();
}

bool matches_up_to_permutation(const std::vector<int>& want, const std::vector<int>& got) {
    if (want.size() != got.size()) return false;
    int fwd[16] = {}, back[16] = {};
    for (std::size_t v = 0; v < want.size(); ++v) {
        int a = want[v], b = got[v];
        if ((a == 0) != (b == 0)) return false;
        if (!a) continue;
        if ((fwd[a] && fwd[a] != b) || (back[b] && back[b] != a)) return false;
        fwd[a] = b;
        back[b] = a;
    }
    return true;
}

std::vector<int> as_ints(const Coloring& c) { return {c.a.begin(), c.a.end()}; }

// The Kempe class of c, by explicit search.
std::vector<PackedState> class_members(const Triangulation& T, const Coloring& c) {
    StateCodec codec(T.num_vertices(), 4);
    std::vector<std::uint8_t> col = c.a;
    PackedState s = codec.pack_canonical(col.data());
    std::unordered_set<PackedState, PackedStateHash> seen{s};
    std::vector<PackedState> order{s}, nb;
    for (std::size_t h = 0; h < order.size(); ++h) {
        kempe_neighbors(T, codec, order[h], 4, nb);
        for (const auto& x : nb)
            if (seen.insert(x).second) order.push_back(x);
    }
    std::sort(order.begin(), order.end());
    return order;
}

Coloring unpack(const Triangulation& T, const PackedState& s) {
    StateCodec codec(T.num_vertices(), 4);
    std::vector<std::uint8_t> col(T.num_vertices());
    codec.unpack(s, col.data());
    return Coloring(T, 4, col);
}

using Body = std::function<std::string()>;

struct Criterion {
    int id;
    std::string name;
    bool full_only;
    Body body;
};

std::string c1_enumeration(int threads) {
    auto T = Triangulation::build(6, 6, 0);
    EnumOptions o;
    o.threads = threads;
    auto res = enumerate_colorings(T, 4, o);
    check(res.total == 305238, "total " + std::to_string(res.total));
    std::map<long, std::uint64_t> want = {{0, 305192}, {6, 45}, {18, 1}};
    check(res.histogram == want, "histogram " + hist_str(res.histogram));
    return "total=305238 |deg| " + hist_str(res.histogram);
}

std::string c2_classes(int threads) {
    auto T = Triangulation::build(6, 6, 0);
    ClassOptions o;
    o.enumeration.threads = threads;
    auto cd = kempe_classes(T, 4, o);
    std::vector<std::uint64_t> sizes;
    for (auto& k : cd.classes) sizes.push_back(k.size);
    std::sort(sizes.rbegin(), sizes.rend());
    check(sizes == std::vector<std::uint64_t>{305192, 46}, "class sizes wrong (" + std::to_string(sizes.size()) + " classes)");
    for (auto& k : cd.classes) {
        if (k.size == 46) check(k.degrees == std::map<long, std::uint64_t>{{6, 45}, {18, 1}}, "small class degrees " + hist_str(k.degrees));
        if (k.size == 305192) check(k.degrees == std::map<long, std::uint64_t>{{0, 305192}}, "large class degrees " + hist_str(k.degrees));
    }
    return "classes {305192, 46} via " + cd.method + "; small class |deg| {6: 45, 18: 1}";
}

std::string c3_t33(int threads) {
    auto T = Triangulation::build(3, 3, 0);
    EnumOptions eo;
    eo.threads = threads;
    auto res = enumerate_colorings(T, 4, eo);
    check(res.histogram.size() == 1 && res.histogram.count(0), "nonzero degree " + hist_str(res.histogram));
    ClassOptions o;
    o.enumeration.threads = threads;
    auto cd = kempe_classes(T, 4, o);
    check(cd.classes.size() == 1, std::to_string(cd.classes.size()) + " classes");
    auto ref = oracle::kempe_class_sizes(3, 3, 0, 4);
    check(ref == std::vector<std::uint64_t>{res.total}, "reference search disagrees");
    return "total=" + std::to_string(res.total) + " all degree 0, 1 class";
}

std::string c4_t69(int threads) {
    auto T = Triangulation::build(6, 9, 0);
    EnumOptions eo;
    eo.threads = threads;
    auto res = enumerate_colorings(T, 4, eo);
    check(res.total == 299146792, "total " + std::to_string(res.total));
    check(res.histogram.size() == 1 && res.histogram.count(0), "histogram " + hist_str(res.histogram));
    ClassOptions o;
    o.enumeration.threads = threads;
    o.method = ClassMethod::Certificate;
    auto cd = kempe_classes(T, 4, o);
    check(cd.total == res.total, "class pass saw " + std::to_string(cd.total));
    check(cd.classes.size() == 1, std::to_string(cd.classes.size()) + " classes");
    return "total=299146792 all degree 0, 1 class via " + cd.method;
}

std::string c5_constructions() {
    std::ostringstream o;
    const std::map<int, long> want = {{2, 18}, {3, 6}, {4, 6}, {5, 6}, {6, 6}, {7, 18}, {8, 18}, {9, 18}};
    for (auto [L, d] : want) {
        auto T = Triangulation::build(3 * L, 3 * L, 0);
        auto [c, tr] = construct_deg6_symmetric(L, {true, true});
        check(is_proper(T, c), "L=" + std::to_string(L) + " not proper");
        auto rep = degree(T, c);
        check(rep.mod12 == 6, "L=" + std::to_string(L) + " degree mod 12 = " + std::to_string(rep.mod12));
        check(rep.degree_abs == d, "L=" + std::to_string(L) + " |deg| " + std::to_string(rep.degree_abs));
        o << " L" << L << ":" << rep.degree_abs;
    }
    // Reference fixtures, final colorings and intermediate snapshots.
    struct Fx {
        int L;
        std::string file, step;
    };
    const std::vector<Fx> fx = {{2, "t6_deg18", ""},          {3, "t9_step1", "step 1"},  {3, "t9_step3", "step 3"},
                                {3, "t9_final", ""},        {4, "t12_step3", "step 3"}, {4, "t12_final", ""},
                                {5, "t15_step1", "step 1"}, {5, "t15_final", ""},       {6, "t18_step1", "step 1"},
                                {6, "t18_final", ""}};
    for (const auto& f : fx) {
        auto g = read_partial_grid_file(fixture_path(f.file + ".grid"));
        auto [c, tr] = construct_deg6_symmetric(f.L, {true, true});
        std::vector<int> got;
        if (f.step.empty()) {
            got = as_ints(c);
        } else {
            auto it = std::find_if(tr.steps.begin(), tr.steps.end(), [&](const TraceStep& s) { return s.label == f.step; });
            check(it != tr.steps.end(), "no trace step " + f.step);
            got = it->snapshot;
        }
        check(matches_up_to_permutation(g.colors, got), "fixture " + f.file + " differs");
    }
    o << "; " << fx.size() << " reference fixtures match";
    return "|deg|" + o.str();
}

std::string c6_mod12(std::uint64_t seed) {
    Rng rng(seed);
    int steps = 0, nonzero_starts = 0;
    for (int chain = 0; chain < 100; ++chain) {
        int L = 1 + static_cast<int>(rng.below(4)), M = 1 + static_cast<int>(rng.below(4));
        // Every third chain starts from a degree-6 witness on T(3L,3L).
        const bool obstructed = chain % 3 == 0 && L >= 2;
        if (obstructed) M = L;
        auto T = Triangulation::build(3 * L, 3 * M, 0);
        Coloring c;
        if (obstructed) {
            c = construct_deg6_symmetric(L, {false, false}).first;
            ++nonzero_starts;
        } else {
            auto col = oracle::random_proper(3 * L, 3 * M, 0, 4, rng);
            c = col.empty() ? three_coloring(T) : Coloring(T, 4, col);
        }
        const int want = degree(T, c).mod12;
        for (int i = 0; i < 100; ++i, ++steps) {
            c = wsk_step(T, c, rng);
            check(is_proper(T, c), "properness lost on " + T.descriptor());
            check(degree(T, c).mod12 == want, "degree mod 12 changed on " + T.descriptor());
        }
    }
    return std::to_string(steps) + " WSK steps over 100 chains (" + std::to_string(nonzero_starts) + " from degree-6 starts)";
}

std::string c7_well_defined(std::uint64_t seed) {
    // Sign anchor first: a flipped convention fails here.
    auto a = read_grid_file(fixture_path("t6_deg18.grid"));
    auto Ta = Triangulation::build(a.r, a.s, a.t);
    check(degree(Ta, a).degree == 18, "fixture anchor degree " + std::to_string(degree(Ta, a).degree) + " (want +18)");

    Rng rng(seed);
    int done = 0;
    while (done < 1000) {
        int r = 3 + static_cast<int>(rng.below(7)), s = 2 + static_cast<int>(rng.below(8)), t = static_cast<int>(rng.below(r));
        Triangulation T;
        try {
            T = Triangulation::build(r, s, t);
        } catch (const TriangulationError&) {
            continue;
        }
        auto col = oracle::random_proper(r, s, t, 4, rng);
        if (col.empty()) continue;
        Coloring c(T, 4, col);
        oracle::Torus ot{r, s, t};
        long d0 = degree(T, c, kTargets[0]).degree;
        for (const auto& tg : kTargets) {
            long d = degree(T, c, tg).degree;
            check(std::labs(d) == std::labs(d0), "|p-n| differs across targets on " + T.descriptor());
            check(d == oracle::naive_degree(ot, col, tg), "reference degree differs on " + T.descriptor());
        }
        for (int k = 1; k <= 4; ++k)
            check(tutte_parity(T, c, k) == static_cast<int>(std::labs(d0) % 2), "parity identity fails on " + T.descriptor());
        ++done;
    }
    return "anchor +18; 1000 random colorings agree on all 4 targets and parity";
}

std::string c8_reduction(std::uint64_t seed) {
    auto T = Triangulation::build(6, 6, 0);
    const Coloring c0 = canonicalize(three_coloring(T));
    Rng rng(seed);
    Coloring cur = three_coloring(T);
    int moves = 0;
    for (int i = 0; i < 200; ++i) {
        for (int k = 0; k < 5; ++k) cur = wsk_step(T, cur, rng);
        check(degree(T, cur).degree == 0, "sampled state has nonzero degree");
        auto res = ns_minimal_reduce(T, cur);
        check(canonicalize(res.coloring) == c0, "reduction stopped short of the 3-coloring");
        Coloring replay = cur;
        for (const auto& m : res.moves) replay = kempe_change(T, replay, m);
        check(replay == res.coloring, "move log does not replay");
        moves += static_cast<int>(res.moves.size());
    }

    auto w = read_grid_file(fixture_path("t6_deg18.grid"));
    auto members = class_members(T, w);
    check(members.size() == 46, "witness class has " + std::to_string(members.size()) + " members");
    std::map<long, int> finals;
    for (int i = 0; i < 20; ++i) {
        Coloring c = unpack(T, members[(i * 7) % members.size()]);
        auto res = ns_minimal_reduce(T, c);
        auto rep = check_ns_minimal_structure(T, res.coloring);
        check(rep.ok && !rep.trivial, "structure check failed" + (rep.failures.empty() ? "" : ": " + rep.failures[0]));
        check(std::labs(rep.degree) % 4 == 2, "degree not 2 mod 4");
        ++finals[std::labs(rep.degree)];
    }
    std::ostringstream o;
    o << "200 degree-0 samples reach the 3-coloring (" << moves << " K-changes replayed); 20 class-46 reductions NS-minimal, |deg|";
    for (auto [d, n] : finals) o << " " << d << "x" << n;
    return o.str();
}

std::string c9_gluing(std::uint64_t seed) {
    Rng rng(seed);
    std::map<int, Coloring> base;
    for (int L = 3; L <= 9; ++L) base[L] = construct_deg6_symmetric(L, {false, false}).first;
    for (int i = 0; i < 100; ++i) {
        int L = 3 + static_cast<int>(rng.below(7));
        std::vector<int> perm = {1, 2, 3, 4};
        for (int k = 3; k > 0; --k) std::swap(perm[k], perm[rng.below(k + 1)]);
        Coloring c = permute_colors(base[L], perm);
        // Glue onto either the base or an already glued coloring.
        int extra = static_cast<int>(rng.below(3));
        Coloring strip = permute_colors(build_strip(L), perm);
        for (int e = 0; e < extra; ++e) c = glue_strip(c, strip);
        auto T0 = Triangulation::build(c.r, c.s, c.t);
        auto Ts = Triangulation::build(strip.r, strip.s, strip.t);
        Coloring g = glue_strip(c, strip);
        auto T1 = Triangulation::build(g.r, g.s, g.t);
        check(is_proper(T1, g), "glued coloring not proper");
        check(degree(T1, g).degree == degree(T0, c).degree + degree(Ts, strip).degree, "degree not additive under gluing");
    }
    std::vector<Coloring> pool;
    for (const char* f : {"t6_deg18", "t6_deg6_a", "t6_deg6_b", "t6_deg6_c"}) pool.push_back(read_grid_file(fixture_path(std::string(f) + ".grid")));
    for (int L = 3; L <= 5; ++L) pool.push_back(base[L]);
    for (int i = 0; i < 50; ++i) {
        const Coloring& c = pool[rng.below(pool.size())];
        int p = 1 + static_cast<int>(rng.below(3)), q = 1 + static_cast<int>(rng.below(3));
        auto T = Triangulation::build(c.r, c.s, c.t);
        Coloring e = extend_periodic(c, p, q);
        auto Te = Triangulation::build(e.r, e.s, e.t);
        check(is_proper(Te, e), "extension not proper");
        check(degree(Te, e).degree == p * q * degree(T, c).degree, "degree not multiplied by p*q");
    }
    Coloring w = construct_deg6(2, 6);
    auto Tw = Triangulation::build(w.r, w.s, w.t);
    check(w.r == 6 && w.s == 18, "witness shape " + Tw.descriptor());
    check(is_proper(Tw, w) && degree(Tw, w).degree_abs == 54, "T(6,18) witness |deg| " + std::to_string(degree(Tw, w).degree_abs));
    return "100 gluings additive, 50 extensions scale by p*q, T(6,18) witness |deg| 54";
}

std::string c10_width3(int threads) {
    std::ostringstream o;
    EnumOptions eo;
    eo.threads = threads;
    std::uint64_t total = 0;
    for (int L = 3; L <= 6; ++L)
        for (auto [r, s] : {std::pair{3, L}, std::pair{L, 3}}) {
            auto T = Triangulation::build(r, s, 0);
            auto res = enumerate_colorings(T, 4, eo);
            check(res.histogram.size() == 1 && res.histogram.count(0), T.descriptor() + " has " + hist_str(res.histogram));
            total += res.total;
        }
    o << total << " colorings of T(3,L), T(L,3), L=3..6, all degree 0";
    return o.str();
}

std::string c11_small_oracle(int threads) {
    std::ostringstream o;
    EnumOptions eo;
    eo.threads = threads;
    for (auto [r, s] : {std::pair{3, 3}, std::pair{6, 3}}) {
        auto T = Triangulation::build(r, s, 0);
        auto res = enumerate_colorings(T, 4, eo);
        std::uint64_t brute = oracle::count_proper(r, s, 0, 4);
        check(res.total * 24 == brute, T.descriptor() + ": " + std::to_string(res.total) + " x 24 != " + std::to_string(brute));
        o << T.descriptor() << " " << res.total << "x24=" << brute << " ";
    }
    return o.str();
}

}  // namespace

bool all_passed(const std::vector<Outcome>& r) {
    return std::all_of(r.begin(), r.end(), [](const Outcome& o) { return o.status != "FAIL"; });
}

std::vector<Outcome> run(Level level, std::ostream& out, int threads) {
    const std::uint64_t seed = 20240601;
    const std::vector<Criterion> cs = {
        {1, "T(6,6) enumeration", false, [&] { return c1_enumeration(threads); }},
        {2, "T(6,6) Kempe classes", false, [&] { return c2_classes(threads); }},
        {3, "T(3,3) degree 0 and one class", false, [&] { return c3_t33(threads); }},
        {4, "T(6,9) count and one class", true, [&] { return c4_t69(threads); }},
        {5, "degree-6 constructions", false, [&] { return c5_constructions(); }},
        {6, "mod-12 invariance under WSK", false, [&] { return c6_mod12(seed); }},
        {7, "degree well-definedness", false, [&] { return c7_well_defined(seed + 1); }},
        {8, "NS-minimal reduction", false, [&] { return c8_reduction(seed + 2); }},
        {9, "gluing and extension arithmetic", false, [&] { return c9_gluing(seed + 3); }},
        {10, "width-3 law", false, [&] { return c10_width3(threads); }},
        {11, "small-oracle count equivalence", false, [&] { return c11_small_oracle(threads); }},
    };
    std::vector<Outcome> results;
    for (const auto& c : cs) {
        Outcome o{c.id, c.name, "PASS", "", 0};
        auto t0 = std::chrono::steady_clock::now();
        if (c.full_only && level != Level::Full) {
            o.status = "SKIP";
            o.detail = "long run, use the full level";
        } else {
            try {
                o.detail = c.body();
            } catch (const Failed& f) {
                o.status = "FAIL";
                o.detail = f.why;
            } catch (const std::exception& e) {
                o.status = "FAIL";
                o.detail = std::string("exception: ") + e.what();
            }
        }
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out << std::left << std::setw(5) << o.status << std::right << std::setw(3) << o.id << "  " << std::left
            << std::setw(34) << o.name << std::right << std::fixed << std::setprecision(2) << std::setw(9) << o.seconds
            << "s  " << o.detail << std::endl;
        results.push_back(o);
    }
    return results;
}

}  // namespace kempe::acceptance
