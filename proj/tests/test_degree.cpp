#include "doctest.h"
#include "kempe/degree.hpp"
#include "kempe/errors.hpp"
#include "kempe/grid_io.hpp"
#include "kempe/state_space.hpp"
#include "acceptance_suite.hpp"
#include "oracles.hpp"

using namespace kempe;

namespace {
Coloring fixture(const char* name) { return read_grid_file(acceptance::fixture_path(std::string(name) + ".grid")); }
}  // namespace

TEST_CASE("reference fixtures pin the sign convention") {
    auto T = Triangulation::build(6, 6, 0);
    CHECK(degree(T, fixture("t6_deg18")).degree == 18);
    CHECK(degree(T, fixture("t6_deg6_a")).degree == 6);
    CHECK(degree(T, fixture("t6_deg6_b")).degree == 6);
    CHECK(degree(T, fixture("t6_deg6_c")).degree == -6);
    CHECK(degree(T, three_coloring(T)).degree == 0);
    CHECK(degree(T, nonsingular_coloring(T)).degree == -18);
}

TEST_CASE("face sign") {
    CHECK(face_sign(1, 2, 3) == 1);
    CHECK(face_sign(2, 3, 1) == 1);
    CHECK(face_sign(1, 3, 2) == -1);
    CHECK(face_sign(1, 2, 4) == 0);
    CHECK(face_sign(1, 4, 2, kTargets[2]) == 1);
}

TEST_CASE("degree agrees with the reference on random colorings") {
    kempe::Rng rng(11);
    int n = 0;
    while (n < 200) {
        int r = 3 + static_cast<int>(rng.below(6)), s = 2 + static_cast<int>(rng.below(6)), t = static_cast<int>(rng.below(r));
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
        DegreeReport d = degree(T, c);
        CHECK(d.degree == d.p - d.n);
        CHECK(d.degree == degree_parallel(T, c).degree);
        for (const auto& tg : kTargets) CHECK(degree(T, c, tg).degree == oracle::naive_degree(ot, col, tg));
        std::vector<int> ints(col.begin(), col.end());
        CHECK(partial_degree(T, ints) == d.degree);
        for (int a = 1; a <= 4; ++a) CHECK(tutte_parity(T, c, a) == d.degree_abs % 2);
        ++n;
    }
}

TEST_CASE("mirror image reverses the sign") {
    // (x,y) -> (y,x) maps T(r,r,0) to itself and reverses orientation.
    auto T = Triangulation::build(6, 6, 0);
    for (const char* f : {"t6_deg18", "t6_deg6_a", "t6_deg6_c"}) {
        Coloring c = fixture(f);
        std::vector<std::uint8_t> m(36);
        for (int y = 1; y <= 6; ++y)
            for (int x = 1; x <= 6; ++x) m[T.index(y, x)] = c.a[T.index(x, y)];
        Coloring mc(T, 4, m);
        REQUIRE(is_proper(T, mc));
        CHECK(degree(T, mc).degree == -degree(T, c).degree);
    }
}

TEST_CASE("partial degree counts only complete faces") {
    auto T = Triangulation::build(6, 6, 0);
    Coloring c = fixture("t6_deg18");
    std::vector<int> col(c.a.begin(), c.a.end());
    std::vector<int> none(36, 0);
    CHECK(partial_degree(T, none) == 0);
    std::vector<int> up;
    for (int v = 0; v < 36; ++v) up.push_back(2 * v);
    std::vector<int> down;
    for (int v = 0; v < 36; ++v) down.push_back(2 * v + 1);
    CHECK(partial_degree(T, col, &up) + partial_degree(T, col, &down) == 18);
}

TEST_CASE("residue checks and labels") {
    auto T = Triangulation::build(6, 6, 0);
    CHECK(degree_residue_checks(T, fixture("t6_deg18")).label == "obstructed-class");
    CHECK(degree_residue_checks(T, fixture("t6_deg6_a")).mod12 == 6);
    CHECK(degree_residue_checks(T, three_coloring(T)).label == "ergodic-class");
    auto T4 = Triangulation::build(4, 4, 0);
    kempe::Rng rng(1);
    Coloring c(T4, 4, oracle::random_proper(4, 4, 0, 4, rng));
    CHECK_THROWS_AS(degree_residue_checks(T4, c), std::invalid_argument);
    CHECK_THROWS(tutte_parity(T, three_coloring(T), 5));
    CHECK(tutte_parity(T, three_coloring(T), 4) == 0);
}

TEST_CASE("every coloring of a 3-colorable torus has degree divisible by 6") {
    auto T = Triangulation::build(6, 3, 0);
    int seen = 0;
    for_each_coloring(T, 4, [&](const std::uint8_t* col) {
        Coloring c(T, 4, std::vector<std::uint8_t>(col, col + T.num_vertices()));
        CHECK(degree(T, c).mod6 == 0);
        ++seen;
    });
    CHECK(seen == 364);
}

TEST_CASE("degree bound") {
    CHECK(max_degree_bound(2) == 18);
    CHECK(max_degree_bound(3) == 40);
    CHECK(max_degree_bound(100000) == 45000000000L);
    CHECK_THROWS(max_degree_bound(0));
}
