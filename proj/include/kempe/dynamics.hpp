#pragma once

#include <vector>

#include "kempe/coloring.hpp"
#include "kempe/rng.hpp"
#include "kempe/triangulation.hpp"

namespace kempe {

struct KempeMove {
    int a = 1, b = 2;
    std::vector<int> component;  // ascending vertex indices
};

// Components of the subgraph induced by colors a and b, ordered by least
// vertex. Each component is sorted ascending.
std::vector<std::vector<int>> kempe_components(const Triangulation& T, const Coloring& c, int a, int b);

// Labels every vertex with its component id (in least-vertex order) or -1.
// Returns the component count. Allocation-free when labels is presized.
int kempe_labels(const Triangulation& T, const std::uint8_t* col, int a, int b, std::vector<int>& labels,
                 std::vector<int>& stack);

Coloring kempe_change(const Triangulation& T, const Coloring& c, const KempeMove& m);

// Swaps a and b on the listed vertices without validation.
void swap_on(Coloring& c, int a, int b, const std::vector<int>& vertices);

// The i-th pair in lexicographic order among the C(q,2) pairs.
std::pair<int, int> color_pair(int q, int i);

struct WskTrace {
    int a = 0, b = 0;
    int components = 0;
    int swapped = 0;
};

// One zero-temperature WSK step: one pair draw, then one coin per component
// in least-vertex order.
Coloring wsk_step(const Triangulation& T, const Coloring& c, Rng& rng, WskTrace* trace = nullptr);

}  // namespace kempe
