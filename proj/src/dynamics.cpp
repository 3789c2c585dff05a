#include "kempe/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

namespace kempe {

int kempe_labels(const Triangulation& T, const std::uint8_t* col, int a, int b, std::vector<int>& labels,
                 std::vector<int>& stack) {
    const int n = T.num_vertices();
    labels.assign(n, -1);
    int count = 0;
    for (int v = 0; v < n; ++v) {
        if (labels[v] >= 0 || (col[v] != a && col[v] != b)) continue;
        labels[v] = count;
        stack.clear();
        stack.push_back(v);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : T.neighbors(u))
                if (labels[w] < 0 && (col[w] == a || col[w] == b)) {
                    labels[w] = count;
                    stack.push_back(w);
                }
        }
        ++count;
    }
    return count;
}

std::vector<std::vector<int>> kempe_components(const Triangulation& T, const Coloring& c, int a, int b) {
    if (a == b) throw std::invalid_argument("kempe pair needs two distinct colors");
    std::vector<int> labels, stack;
    int k = kempe_labels(T, c.a.data(), a, b, labels, stack);
    std::vector<std::vector<int>> out(k);
    for (int v = 0; v < T.num_vertices(); ++v)
        if (labels[v] >= 0) out[labels[v]].push_back(v);
    return out;
}

void swap_on(Coloring& c, int a, int b, const std::vector<int>& vertices) {
    for (int v : vertices) c.a[v] = static_cast<std::uint8_t>(c.a[v] == a ? b : a);
}

Coloring kempe_change(const Triangulation& T, const Coloring& c, const KempeMove& m) {
    if (m.a == m.b || m.component.empty()) throw std::invalid_argument("invalid kempe move");
    std::vector<int> labels, stack;
    kempe_labels(T, c.a.data(), m.a, m.b, labels, stack);
    const int id = labels.at(m.component.front());
    if (id < 0) throw std::invalid_argument("kempe move component is not a K-component of the coloring");
    std::vector<int> members;
    for (int v = 0; v < T.num_vertices(); ++v)
        if (labels[v] == id) members.push_back(v);
    std::vector<int> given = m.component;
    std::sort(given.begin(), given.end());
    if (given != members) throw std::invalid_argument("kempe move component is not a K-component of the coloring");
    Coloring out = c;
    swap_on(out, m.a, m.b, members);
    return out;
}

std::pair<int, int> color_pair(int q, int i) {
    for (int a = 1; a <= q; ++a)
        for (int b = a + 1; b <= q; ++b)
            if (i-- == 0) return {a, b};
    throw std::out_of_range("color pair index");
}

Coloring wsk_step(const Triangulation& T, const Coloring& c, Rng& rng, WskTrace* trace) {
    const int pairs = c.q * (c.q - 1) / 2;
    auto [a, b] = color_pair(c.q, static_cast<int>(rng.below(pairs)));
    std::vector<int> labels, stack;
    int k = kempe_labels(T, c.a.data(), a, b, labels, stack);
    std::vector<char> flip(k);
    int swapped = 0;
    for (int i = 0; i < k; ++i) swapped += flip[i] = rng.coin();
    Coloring out = c;
    for (int v = 0; v < T.num_vertices(); ++v)
        if (labels[v] >= 0 && flip[labels[v]]) out.a[v] = static_cast<std::uint8_t>(out.a[v] == a ? b : a);
    if (trace) *trace = {a, b, k, swapped};
    return out;
}

}  // namespace kempe
