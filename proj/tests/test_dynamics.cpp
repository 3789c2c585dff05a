#include <set>

#include "doctest.h"
#include "kempe/degree.hpp"
#include "kempe/dynamics.hpp"
#include "kempe/grid_io.hpp"
#include "acceptance_suite.hpp"
#include "oracles.hpp"

using namespace kempe;

TEST_CASE("rng is reproducible and bounded") {
    Rng a(42), b(42), c(42, 1);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    CHECK(Rng(42).next() != c.next());
    CHECK(Rng(42).split(1).next() == Rng(42, 1).next());
    Rng r(5);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        auto x = r.below(6);
        CHECK(x < 6);
        seen.insert(x);
    }
    CHECK(seen.size() == 6);
    // mt19937_64 output is fixed by the standard.
    std::mt19937_64 ref(5489u);
    for (int i = 0; i < 9999; ++i) ref();
    CHECK(ref() == 9981545732273789042ULL);
}

TEST_CASE("color pairs in lexicographic order") {
    CHECK(color_pair(4, 0) == std::pair{1, 2});
    CHECK(color_pair(4, 2) == std::pair{1, 4});
    CHECK(color_pair(4, 5) == std::pair{3, 4});
    CHECK(color_pair(5, 9) == std::pair{4, 5});
    CHECK_THROWS(color_pair(4, 6));
}

TEST_CASE("Kempe components partition the two-colored vertices") {
    auto T = Triangulation::build(9, 6, 0);
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        Coloring c(T, 4, oracle::random_proper(9, 6, 0, 4, rng));
        for (int a = 1; a <= 4; ++a)
            for (int b = a + 1; b <= 4; ++b) {
                auto comps = kempe_components(T, c, a, b);
                std::set<int> all;
                int prev = -1;
                for (const auto& k : comps) {
                    CHECK(k.front() > prev);
                    prev = k.front();
                    CHECK(std::is_sorted(k.begin(), k.end()));
                    for (int v : k) CHECK(all.insert(v).second);
                    // Swapping one component keeps the coloring proper.
                    Coloring d = kempe_change(T, c, {a, b, k});
                    CHECK(is_proper(T, d));
                    CHECK(degree(T, d).mod12 == degree(T, c).mod12);
                }
                int n = 0;
                for (int v = 0; v < T.num_vertices(); ++v) n += c[v] == a || c[v] == b;
                CHECK(static_cast<int>(all.size()) == n);
            }
    }
}

TEST_CASE("kempe_change rejects a non-component") {
    auto T = Triangulation::build(6, 6, 0);
    Coloring c = read_grid_file(acceptance::fixture_path("t6_deg18.grid"));
    auto comps = kempe_components(T, c, 1, 2);
    auto part = comps[0];
    part.pop_back();
    CHECK_THROWS(kempe_change(T, c, {1, 2, part}));
    CHECK_THROWS(kempe_change(T, c, {1, 2, {}}));
    CHECK_NOTHROW(kempe_change(T, c, {1, 2, comps[0]}));
}

TEST_CASE("WSK is determined by the seed") {
    auto T = Triangulation::build(9, 9, 0);
    auto run = [&](std::uint64_t seed) {
        Rng rng(seed);
        Coloring c = three_coloring(T);
        std::vector<Coloring> path;
        for (int i = 0; i < 50; ++i) path.push_back(c = wsk_step(T, c, rng));
        return path;
    };
    CHECK(run(7) == run(7));
    CHECK(run(7) != run(8));
}

TEST_CASE("WSK keeps properness and the degree residue from a degree-6 start") {
    auto T = Triangulation::build(6, 6, 0);
    Coloring c = read_grid_file(acceptance::fixture_path("t6_deg6_a.grid"));
    Rng rng(2);
    for (int i = 0; i < 300; ++i) {
        WskTrace tr;
        c = wsk_step(T, c, rng, &tr);
        CHECK(tr.a < tr.b);
        CHECK(tr.swapped <= tr.components);
        REQUIRE(is_proper(T, c));
        CHECK(degree(T, c).mod12 == 6);
    }
}
