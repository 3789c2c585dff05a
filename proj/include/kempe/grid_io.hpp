#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kempe/coloring.hpp"

namespace kempe {

// Grid text format: a header line "T r s t q", then s lines of r digits,
// row y=1 first. A partial grid may use 0 for uncolored vertices.
struct PartialGrid {
    int r = 0, s = 0, t = 0, q = 4;
    std::vector<int> colors;  // vertex-indexed, 0 = uncolored
};

PartialGrid read_partial_grid(std::istream& in);
Coloring read_grid(std::istream& in);
Coloring read_grid_file(const std::string& path);
PartialGrid read_partial_grid_file(const std::string& path);

void write_grid(std::ostream& out, const Coloring& c);
std::string grid_string(const Coloring& c);
void write_grid_file(const std::string& path, const Coloring& c);

}  // namespace kempe
