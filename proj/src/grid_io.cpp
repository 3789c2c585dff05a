#include "kempe/grid_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kempe {

PartialGrid read_partial_grid(std::istream& in) {
    PartialGrid g;
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("grid: missing header");
    std::istringstream hs(line);
    std::string tag, extra;
    if (!(hs >> tag >> g.r >> g.s >> g.t >> g.q) || tag != "T" || (hs >> extra))
        throw std::invalid_argument("grid: header must be 'T r s t q'");
    if (g.r < 1 || g.s < 1 || g.q < 1 || g.q > 9) throw std::invalid_argument("grid: bad header values");
    g.colors.assign(static_cast<std::size_t>(g.r) * g.s, 0);
    for (int y = 1; y <= g.s; ++y) {
        if (!std::getline(in, line)) throw std::invalid_argument("grid: expected " + std::to_string(g.s) + " rows");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (static_cast<int>(line.size()) != g.r)
            throw std::invalid_argument("grid: row " + std::to_string(y) + " must have " + std::to_string(g.r) + " digits");
        for (int x = 1; x <= g.r; ++x) {
            char ch = line[x - 1];
            if (ch < '0' || ch > '0' + g.q) throw std::invalid_argument("grid: invalid color in row " + std::to_string(y));
            g.colors[(y - 1) * g.r + (x - 1)] = ch - '0';
        }
    }
    while (std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) throw std::invalid_argument("grid: trailing data");
    return g;
}

Coloring read_grid(std::istream& in) {
    PartialGrid g = read_partial_grid(in);
    Triangulation T = Triangulation::build(g.r, g.s, g.t);
    std::vector<std::uint8_t> a(g.colors.begin(), g.colors.end());
    for (auto x : a)
        if (x == 0) throw std::invalid_argument("grid: uncolored vertex in a full coloring");
    return Coloring(T, g.q, std::move(a));
}

Coloring read_grid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return read_grid(in);
}

PartialGrid read_partial_grid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return read_partial_grid(in);
}

void write_grid(std::ostream& out, const Coloring& c) {
    out << "T " << c.r << ' ' << c.s << ' ' << c.t << ' ' << c.q << '\n';
    for (int y = 0; y < c.s; ++y) {
        for (int x = 0; x < c.r; ++x) out << static_cast<char>('0' + c.a[y * c.r + x]);
        out << '\n';
    }
}

std::string grid_string(const Coloring& c) {
    std::ostringstream os;
    write_grid(os, c);
    return os.str();
}

void write_grid_file(const std::string& path, const Coloring& c) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    write_grid(out, c);
}

}  // namespace kempe
