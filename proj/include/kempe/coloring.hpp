#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kempe/triangulation.hpp"

namespace kempe {

// Vertex-indexed colors in 1..q. Properness is never cached.
struct Coloring {
    int r = 0, s = 0, t = 0;
    int q = 4;
    std::vector<std::uint8_t> a;

    Coloring() = default;
    Coloring(const Triangulation& T, int q_, std::vector<std::uint8_t> colors);

    int size() const { return static_cast<int>(a.size()); }
    int operator[](int v) const { return a[v]; }
    std::string descriptor() const;
    bool same_shape(const Triangulation& T) const { return r == T.r() && s == T.s() && t == T.t(); }

    bool operator==(const Coloring&) const = default;
};

// A coloring relabeled by first appearance in vertex order.
using CanonicalColoring = Coloring;

bool is_proper(const Triangulation& T, const Coloring& c);
CanonicalColoring canonicalize(const Coloring& c);
// Applies perm (perm[c-1] is the new color of c) to every vertex.
Coloring permute_colors(const Coloring& c, const std::vector<int>& perm);
bool equal_up_to_permutation(const Coloring& a, const Coloring& b);

Coloring three_coloring(const Triangulation& T);
Coloring nonsingular_coloring(const Triangulation& T);

// seq := item+ ; item := color | '[' color+ ']' '^' int ; whitespace ignored.
// The exponent may also be written in braces, as in ^{3}.
struct RowPattern {
    struct Group {
        std::vector<int> colors;
        int repeat = 1;
    };
    std::vector<Group> groups;

    static RowPattern parse(const std::string& text);
    std::size_t length() const;
};

std::vector<int> expand_row_pattern(const RowPattern& p);
std::vector<int> expand_row_pattern(const std::string& text);

// rows[0] is row y=1.
Coloring coloring_from_rows(const Triangulation& T, const std::vector<std::vector<int>>& rows, int q = 4);
std::vector<int> row_of(const Coloring& c, int y);

}  // namespace kempe
