#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "kempe/coloring.hpp"
#include "kempe/triangulation.hpp"

namespace kempe {

// Oriented target triangles of the tetrahedron boundary, consistently
// oriented so that the signed degree agrees for all four.
inline constexpr std::array<std::array<int, 3>, 4> kTargets = {{{1, 2, 3}, {1, 3, 4}, {1, 4, 2}, {2, 4, 3}}};

struct DegreeReport {
    long p = 0;
    long n = 0;
    long degree = 0;
    long degree_abs = 0;
    int mod2 = 0, mod4 = 0, mod6 = 0, mod12 = 0;
};

// +1, -1 or 0 for one face whose clockwise colors are (c0,c1,c2).
int face_sign(int c0, int c1, int c2, const std::array<int, 3>& target = kTargets[0]);

DegreeReport degree(const Triangulation& T, const Coloring& c, const std::array<int, 3>& target = kTargets[0]);
// Same scan, faces partitioned over OpenMP threads.
DegreeReport degree_parallel(const Triangulation& T, const Coloring& c);

// Signed degree over the faces all of whose vertices are colored (0 means
// uncolored), optionally restricted to a face subset.
long partial_degree(const Triangulation& T, const std::vector<int>& colors, const std::vector<int>* faces = nullptr);

int tutte_parity(const Triangulation& T, const Coloring& c, int a);

struct ResidueRecord {
    long degree = 0;
    long degree_abs = 0;
    int mod12 = 0;
    std::string label;  // "ergodic-class" or "obstructed-class"
};

ResidueRecord degree_residue_checks(const Triangulation& T, const Coloring& c);

long max_degree_bound(int L);

}  // namespace kempe
