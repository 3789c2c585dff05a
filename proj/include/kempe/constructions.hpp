#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "kempe/coloring.hpp"
#include "kempe/triangulation.hpp"

namespace kempe {

struct TraceStep {
    std::string label;
    std::vector<int> diagonals;  // counter-diagonals colored, in order
    long partial_degree = 0;
    std::vector<Coord> exceptions;  // vertices whose only color lay outside the pair
    std::vector<Coord> free;        // vertices with two admissible pair colors
    std::vector<int> snapshot;      // colors after the step (0 = uncolored), optional
};

struct ConstructionTrace {
    int L = 0;
    std::string family;  // "4k-2", "4k-1", "4k", "4k+1"
    int k = 0;
    std::vector<TraceStep> steps;
};

struct ConstructOptions {
    bool checked = true;     // verify exception tables, properness, final degree
    bool snapshots = false;  // keep a color snapshot per step
};

std::pair<Coloring, ConstructionTrace> construct_deg6_symmetric(int L, const ConstructOptions& opt = {});

Coloring extend_periodic(const Coloring& c, int p, int q);

// Row patterns (c1, c2, c3) of the width-3 strip for T(3L,3); c1 is row y=1.
std::array<std::string, 3> strip_patterns(int L);
Coloring build_strip(int L);

Coloring glue_strip(const Coloring& c, const Coloring& strip);

Coloring construct_deg6(int L, int M);

}  // namespace kempe
