#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>

namespace oracle {

int Torus::at(int x, int y) const {
    int yy = y - 1, xx = x - 1;
    int wraps = yy >= 0 ? yy / s : -((-yy + s - 1) / s);
    yy -= wraps * s;
    xx += wraps * t;
    xx = ((xx % r) + r) % r;
    return yy * r + xx;
}

std::vector<int> Torus::adjacent(int v) const {
    int x = v % r + 1, y = v / r + 1;
    return {at(x + 1, y), at(x - 1, y), at(x, y + 1), at(x, y - 1), at(x + 1, y + 1), at(x - 1, y - 1)};
}

std::vector<std::array<int, 3>> Torus::triangles() const {
    std::vector<std::array<int, 3>> out;
    for (int y = 1; y <= s; ++y)
        for (int x = 1; x <= r; ++x) {
            out.push_back({at(x, y), at(x + 1, y + 1), at(x + 1, y)});
            out.push_back({at(x, y), at(x, y + 1), at(x + 1, y + 1)});
        }
    return out;
}

namespace {

template <class F>
void backtrack(const Torus& T, int q, std::vector<std::uint8_t>& col, int v, F&& visit) {
    if (v == T.n()) {
        visit(col);
        return;
    }
    for (int c = 1; c <= q; ++c) {
        bool ok = true;
        for (int w : T.adjacent(v))
            if (col[w] == c) ok = false;
        if (!ok) continue;
        col[v] = static_cast<std::uint8_t>(c);
        backtrack(T, q, col, v + 1, visit);
        col[v] = 0;
    }
}

}  // namespace

bool three_colorable(int r, int s, int t) {
    Torus T{r, s, t};
    std::vector<std::uint8_t> col(T.n(), 0);
    bool found = false;
    // The first vertex may be fixed to color 1 by symmetry.
    std::function<void(int)> go = [&](int v) {
        if (found) return;
        if (v == T.n()) {
            found = true;
            return;
        }
        for (int c = 1; c <= (v == 0 ? 1 : 3); ++c) {
            bool ok = true;
            for (int w : T.adjacent(v))
                if (w == v || col[w] == c) ok = false;
            if (!ok) continue;
            col[v] = static_cast<std::uint8_t>(c);
            go(v + 1);
            col[v] = 0;
        }
    };
    go(0);
    return found;
}

std::uint64_t count_proper(int r, int s, int t, int q) {
    Torus T{r, s, t};
    std::vector<std::uint8_t> col(T.n(), 0);
    std::uint64_t n = 0;
    backtrack(T, q, col, 0, [&](const std::vector<std::uint8_t>&) { ++n; });
    return n;
}

std::uint64_t count_canonical(int r, int s, int t, int q) {
    Torus T{r, s, t};
    std::vector<std::uint8_t> col(T.n(), 0);
    std::set<std::vector<std::uint8_t>> seen;
    backtrack(T, q, col, 0, [&](const std::vector<std::uint8_t>& c) {
        std::array<int, 16> m{};
        int next = 0;
        auto d = c;
        for (auto& x : d) {
            if (!m[x]) m[x] = ++next;
            x = static_cast<std::uint8_t>(m[x]);
        }
        seen.insert(d);
    });
    return seen.size();
}

std::vector<std::uint8_t> random_proper(int r, int s, int t, int q, kempe::Rng& rng) {
    Torus T{r, s, t};
    std::vector<std::uint8_t> col(T.n(), 0);
    std::vector<int> order(T.n());
    std::iota(order.begin(), order.end(), 0);
    std::uint64_t steps = 0;
    std::function<bool(int)> go = [&](int i) {
        if (i == T.n()) return true;
        if (++steps > 2000000) return false;
        int v = order[i];
        std::vector<int> cs(q);
        std::iota(cs.begin(), cs.end(), 1);
        for (int k = q - 1; k > 0; --k) std::swap(cs[k], cs[rng.below(k + 1)]);
        for (int c : cs) {
            bool ok = true;
            for (int w : T.adjacent(v))
                if (col[w] == c) ok = false;
            if (!ok) continue;
            col[v] = static_cast<std::uint8_t>(c);
            if (go(i + 1)) return true;
            col[v] = 0;
        }
        return false;
    };
    if (!go(0)) return {};
    return col;
}

long naive_degree(const Torus& T, const std::vector<std::uint8_t>& col, std::array<int, 3> target) {
    long d = 0;
    for (auto f : T.triangles()) {
        std::array<int, 3> c = {col[f[0]], col[f[1]], col[f[2]]};
        std::array<int, 3> sc = c, st = target;
        std::sort(sc.begin(), sc.end());
        std::sort(st.begin(), st.end());
        if (sc != st) continue;
        // Position of each target color in the face, as a permutation of 0,1,2.
        std::array<int, 3> pos;
        for (int i = 0; i < 3; ++i) pos[i] = static_cast<int>(std::find(c.begin(), c.end(), target[i]) - c.begin());
        int inv = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) inv += pos[i] > pos[j];
        d += inv % 2 == 0 ? 1 : -1;
    }
    return d;
}

std::vector<std::uint64_t> kempe_class_sizes(int r, int s, int t, int q) {
    Torus T{r, s, t};
    auto canon = [&](std::vector<std::uint8_t> c) {
        std::array<int, 16> m{};
        int next = 0;
        for (auto& x : c) {
            if (!m[x]) m[x] = ++next;
            x = static_cast<std::uint8_t>(m[x]);
        }
        return c;
    };
    std::set<std::vector<std::uint8_t>> all;
    std::vector<std::uint8_t> col(T.n(), 0);
    backtrack(T, q, col, 0, [&](const std::vector<std::uint8_t>& c) { all.insert(canon(c)); });

    std::set<std::vector<std::uint8_t>> seen;
    std::vector<std::uint64_t> sizes;
    for (const auto& start : all) {
        if (seen.count(start)) continue;
        std::vector<std::vector<std::uint8_t>> stack{start};
        seen.insert(start);
        std::uint64_t size = 0;
        while (!stack.empty()) {
            auto c = stack.back();
            stack.pop_back();
            ++size;
            for (int a = 1; a <= q; ++a)
                for (int b = a + 1; b <= q; ++b) {
                    std::vector<int> comp(T.n(), -1);
                    for (int v = 0; v < T.n(); ++v) {
                        if (comp[v] >= 0 || (c[v] != a && c[v] != b)) continue;
                        std::vector<int> todo{v}, members;
                        comp[v] = v;
                        while (!todo.empty()) {
                            int u = todo.back();
                            todo.pop_back();
                            members.push_back(u);
                            for (int w : T.adjacent(u))
                                if (comp[w] < 0 && (c[w] == a || c[w] == b)) {
                                    comp[w] = v;
                                    todo.push_back(w);
                                }
                        }
                        auto d = c;
                        for (int u : members) d[u] = static_cast<std::uint8_t>(d[u] == a ? b : a);
                        d = canon(d);
                        if (seen.insert(d).second) stack.push_back(d);
                    }
                }
        }
        sizes.push_back(size);
    }
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

}  // namespace oracle
