#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kempe {

// Neighbor directions in counterclockwise angular order. Consecutive
// directions (d, d+1 mod 6) span one face around the vertex.
enum Dir : int { E = 0, NE = 1, N = 2, W = 3, SW = 4, S = 5 };

inline constexpr std::array<int, 6> kDx = {1, 1, 0, -1, -1, 0};
inline constexpr std::array<int, 6> kDy = {0, 1, 1, 0, -1, -1};

inline constexpr int opposite(int d) { return (d + 3) % 6; }

struct Coord {
    int x = 1;
    int y = 1;
    bool operator==(const Coord&) const = default;
};

struct Edge {
    int u = 0, v = 0;           // v is the neighbor of u in direction dir
    int dir = 0;                // one of E, NE, N
    std::array<int, 2> face{};  // the two flanking faces
    std::array<int, 2> apex{};  // third vertex of each flanking face
};

class TriangulationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The 6-regular torus triangulation T(r,s,t). Immutable after build().
class Triangulation {
public:
    static Triangulation build(int r, int s, int t);

    int r() const { return r_; }
    int s() const { return s_; }
    int t() const { return t_; }
    int num_vertices() const { return r_ * s_; }
    int num_edges() const { return 3 * r_ * s_; }
    int num_faces() const { return 2 * r_ * s_; }

    int index(int x, int y) const { return (y - 1) * r_ + (x - 1); }
    int index(Coord c) const { return index(c.x, c.y); }
    Coord coord(int v) const { return {v % r_ + 1, v / r_ + 1}; }

    // Wraps arbitrary integer coordinates onto the torus, applying the twist
    // once per vertical crossing.
    int wrap(int x, int y) const;

    int neighbor(int v, int d) const { return nbr_[v][d]; }
    const std::array<int, 6>& neighbors(int v) const { return nbr_[v]; }
    // Direction from u to its neighbor w, or -1.
    int direction(int u, int w) const;

    // Face 2v is the up-face at v, 2v+1 the down-face. Vertices are listed in
    // clockwise boundary order.
    const std::array<int, 3>& face(int f) const { return faces_[f]; }
    const std::vector<std::array<int, 3>>& faces() const { return faces_; }
    const std::array<int, 3>& face_edges(int f) const { return face_edges_[f]; }

    // Edge 3v+d is the edge from v in direction d (d in {E, NE, N}).
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_between(int u, int w) const;

    // Index j in 1..r of the counter-diagonal holding v: x + y = j (mod r).
    int diagonal_index(int v) const { return diag_[v]; }

    std::string descriptor() const;

private:
    int r_ = 0, s_ = 0, t_ = 0;
    std::vector<std::array<int, 6>> nbr_;
    std::vector<std::array<int, 3>> faces_;
    std::vector<std::array<int, 3>> face_edges_;
    std::vector<Edge> edges_;
    std::vector<int> diag_;
};

bool is_three_colorable(int r, int s, int t);

// Vertices of D_j ordered by increasing y. Requires 1 <= j <= r.
std::vector<int> counter_diagonal(const Triangulation& T, int j);

// Parses "T(r,s,t)" or "T(r,s)"; whitespace tolerated.
std::array<int, 3> parse_descriptor(const std::string& text);

}  // namespace kempe
