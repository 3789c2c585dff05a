#include "kempe/coloring.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace kempe {

Coloring::Coloring(const Triangulation& T, int q_, std::vector<std::uint8_t> colors)
    : r(T.r()), s(T.s()), t(T.t()), q(q_), a(std::move(colors)) {
    if (static_cast<int>(a.size()) != T.num_vertices()) throw std::invalid_argument("coloring size mismatch");
    for (auto x : a)
        if (x < 1 || x > q) throw std::invalid_argument("color out of range 1..q");
}

std::string Coloring::descriptor() const {
    return "T(" + std::to_string(r) + "," + std::to_string(s) + "," + std::to_string(t) + ")";
}

bool is_proper(const Triangulation& T, const Coloring& c) {
    if (!c.same_shape(T) || c.size() != T.num_vertices()) throw std::invalid_argument("coloring size mismatch");
    for (const Edge& e : T.edges())
        if (c.a[e.u] == c.a[e.v]) return false;
    return true;
}

CanonicalColoring canonicalize(const Coloring& c) {
    Coloring out = c;
    std::uint8_t map[256] = {0};
    std::uint8_t next = 1;
    for (auto& x : out.a) {
        if (!map[x]) map[x] = next++;
        x = map[x];
    }
    return out;
}

Coloring permute_colors(const Coloring& c, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) < c.q) throw std::invalid_argument("permutation too short");
    std::vector<char> hit(perm.size() + 1, 0);
    for (int p : perm) {
        if (p < 1 || p > static_cast<int>(perm.size()) || hit[p]) throw std::invalid_argument("not a permutation");
        hit[p] = 1;
    }
    Coloring out = c;
    for (auto& x : out.a) x = static_cast<std::uint8_t>(perm[x - 1]);
    return out;
}

bool equal_up_to_permutation(const Coloring& a, const Coloring& b) {
    return a.r == b.r && a.s == b.s && a.t == b.t && canonicalize(a).a == canonicalize(b).a;
}

Coloring three_coloring(const Triangulation& T) {
    if (!is_three_colorable(T.r(), T.s(), T.t())) throw std::invalid_argument(T.descriptor() + " is not 3-colorable");
    std::vector<std::uint8_t> a(T.num_vertices());
    for (int v = 0; v < T.num_vertices(); ++v) {
        Coord p = T.coord(v);
        a[v] = static_cast<std::uint8_t>((p.x + p.y - 2) % 3 + 1);
    }
    return Coloring(T, 4, std::move(a));
}

Coloring nonsingular_coloring(const Triangulation& T) {
    if (T.t() != 0 || T.r() % 3 || T.s() % 3)
        throw std::invalid_argument("non-singular coloring is defined on T(3L,3M,0) only");
    if ((T.r() / 3) % 2 || (T.s() / 3) % 2)
        throw std::invalid_argument("non-singular coloring does not exist: L and M must both be even");
    std::vector<std::uint8_t> a(T.num_vertices());
    for (int v = 0; v < T.num_vertices(); ++v) {
        Coord p = T.coord(v);
        bool xo = p.x % 2 == 1, yo = p.y % 2 == 1;
        a[v] = xo ? (yo ? 1 : 2) : (yo ? 3 : 4);
    }
    return Coloring(T, 4, std::move(a));
}

RowPattern RowPattern::parse(const std::string& text) {
    RowPattern p;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto fail = [&](const char* why) {
        throw std::invalid_argument(std::string("malformed row pattern (") + why + ") at offset " +
                                    std::to_string(i) + ": " + text);
    };
    skip();
    while (i < text.size()) {
        char ch = text[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            p.groups.push_back({{ch - '0'}, 1});
            ++i;
        } else if (ch == '[') {
            ++i;
            Group g;
            skip();
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                g.colors.push_back(text[i] - '0');
                ++i;
                skip();
            }
            if (i >= text.size() || text[i] != ']') fail("expected ']'");
            if (g.colors.empty()) fail("empty group");
            ++i;
            skip();
            if (i >= text.size() || text[i] != '^') fail("expected '^'");
            ++i;
            skip();
            bool brace = i < text.size() && text[i] == '{';
            if (brace) ++i;
            skip();
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (start == i) fail("expected exponent");
            g.repeat = std::stoi(text.substr(start, i - start));
            skip();
            if (brace) {
                if (i >= text.size() || text[i] != '}') fail("expected '}'");
                ++i;
            }
            p.groups.push_back(std::move(g));
        } else {
            fail("unexpected character");
        }
        skip();
    }
    if (p.groups.empty()) fail("empty pattern");
    return p;
}

std::size_t RowPattern::length() const {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.colors.size() * static_cast<std::size_t>(g.repeat);
    return n;
}

std::vector<int> expand_row_pattern(const RowPattern& p) {
    std::vector<int> out;
    out.reserve(p.length());
    for (const auto& g : p.groups)
        for (int k = 0; k < g.repeat; ++k) out.insert(out.end(), g.colors.begin(), g.colors.end());
    return out;
}

std::vector<int> expand_row_pattern(const std::string& text) { return expand_row_pattern(RowPattern::parse(text)); }

Coloring coloring_from_rows(const Triangulation& T, const std::vector<std::vector<int>>& rows, int q) {
    if (static_cast<int>(rows.size()) != T.s()) throw std::invalid_argument("expected " + std::to_string(T.s()) + " rows");
    std::vector<std::uint8_t> a(T.num_vertices());
    for (int y = 1; y <= T.s(); ++y) {
        const auto& row = rows[y - 1];
        if (static_cast<int>(row.size()) != T.r())
            throw std::invalid_argument("row " + std::to_string(y) + " has length " + std::to_string(row.size()) +
                                        ", expected " + std::to_string(T.r()));
        for (int x = 1; x <= T.r(); ++x) a[T.index(x, y)] = static_cast<std::uint8_t>(row[x - 1]);
    }
    return Coloring(T, q, std::move(a));
}

std::vector<int> row_of(const Coloring& c, int y) {
    std::vector<int> out(c.a.begin() + (y - 1) * c.r, c.a.begin() + y * c.r);
    return out;
}

}  // namespace kempe
