#include "kempe/triangulation.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace kempe {

namespace {

int mod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

int Triangulation::wrap(int x, int y) const {
    // Each crossing of the top edge shifts x by +t, each crossing of the
    // bottom edge by -t.
    int qy = (y - 1) >= 0 ? (y - 1) / s_ : -((s_ - y) / s_);
    int yy = y - qy * s_;
    int xx = x + qy * t_;
    return index(mod(xx - 1, r_) + 1, yy);
}

Triangulation Triangulation::build(int r, int s, int t) {
    if (r < 3 || s < 2 || t < 0 || t >= r)
        throw TriangulationError("not a simple 6-regular triangulation: T(" + std::to_string(r) + "," +
                                 std::to_string(s) + "," + std::to_string(t) + ")");
    Triangulation T;
    T.r_ = r;
    T.s_ = s;
    T.t_ = t;
    const int n = r * s;
    T.nbr_.resize(n);
    for (int v = 0; v < n; ++v) {
        Coord c = T.coord(v);
        for (int d = 0; d < 6; ++d) T.nbr_[v][d] = T.wrap(c.x + kDx[d], c.y + kDy[d]);
        auto nb = T.nbr_[v];
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end() || std::find(nb.begin(), nb.end(), v) != nb.end())
            throw TriangulationError("not a simple 6-regular triangulation: " + T.descriptor() +
                                     " has loops or parallel edges");
    }

    T.faces_.resize(2 * n);
    T.face_edges_.resize(2 * n);
    for (int v = 0; v < n; ++v) {
        const auto& nb = T.nbr_[v];
        T.faces_[2 * v] = {v, nb[NE], nb[E]};
        T.faces_[2 * v + 1] = {v, nb[N], nb[NE]};
        T.face_edges_[2 * v] = {3 * v + NE, 3 * nb[E] + N, 3 * v + E};
        T.face_edges_[2 * v + 1] = {3 * v + N, 3 * nb[N] + E, 3 * v + NE};
    }

    T.edges_.resize(3 * n);
    std::vector<int> seen(3 * n, 0);
    for (int v = 0; v < n; ++v)
        for (int d = 0; d < 3; ++d) {
            Edge& e = T.edges_[3 * v + d];
            e.u = v;
            e.v = T.nbr_[v][d];
            e.dir = d;
        }
    for (int f = 0; f < 2 * n; ++f)
        for (int k = 0; k < 3; ++k) {
            int id = T.face_edges_[f][k];
            Edge& e = T.edges_[id];
            int apex = -1;
            for (int w : T.faces_[f])
                if (w != e.u && w != e.v) apex = w;
            if (apex < 0 || seen[id] >= 2)
                throw TriangulationError("not a simple 6-regular triangulation: " + T.descriptor() +
                                         " has a degenerate face");
            e.face[seen[id]] = f;
            e.apex[seen[id]] = apex;
            ++seen[id];
        }
    for (int id = 0; id < 3 * n; ++id)
        if (seen[id] != 2 || T.edges_[id].face[0] == T.edges_[id].face[1])
            throw TriangulationError("not a simple 6-regular triangulation: " + T.descriptor() +
                                     " has an edge not on two faces");

    T.diag_.resize(n);
    for (int v = 0; v < n; ++v) {
        Coord c = T.coord(v);
        T.diag_[v] = mod(c.x + c.y - 1, r) + 1;
    }
    return T;
}

int Triangulation::direction(int u, int w) const {
    for (int d = 0; d < 6; ++d)
        if (nbr_[u][d] == w) return d;
    return -1;
}

int Triangulation::edge_between(int u, int w) const {
    int d = direction(u, w);
    if (d < 0) return -1;
    return d < 3 ? 3 * u + d : 3 * w + opposite(d);
}

std::string Triangulation::descriptor() const {
    return "T(" + std::to_string(r_) + "," + std::to_string(s_) + "," + std::to_string(t_) + ")";
}

bool is_three_colorable(int r, int s, int t) {
    // Validates the parameters the same way build() does.
    (void)Triangulation::build(r, s, t);
    return mod(r, 3) == 0 && mod(s - t, 3) == 0;
}

std::vector<int> counter_diagonal(const Triangulation& T, int j) {
    if (j < 1 || j > T.r()) throw std::out_of_range("counter-diagonal index out of range");
    std::vector<int> out;
    for (int v = 0; v < T.num_vertices(); ++v)
        if (T.diagonal_index(v) == j) out.push_back(v);
    return out;  // row-major scan already orders by y
}

std::array<int, 3> parse_descriptor(const std::string& text) {
    static const std::regex re(R"(^\s*T\s*\(\s*(\d+)\s*,\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw std::invalid_argument("bad triangulation descriptor: " + text);
    return {std::stoi(m[1]), std::stoi(m[2]), m[3].matched ? std::stoi(m[3]) : 0};
}

}  // namespace kempe
