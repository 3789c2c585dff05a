#include "kempe/ns_structure.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "kempe/degree.hpp"
#include "kempe/errors.hpp"

namespace kempe {

namespace {

constexpr int kPairA[6] = {1, 1, 1, 2, 2, 3};
constexpr int kPairB[6] = {2, 3, 4, 3, 4, 4};

struct Cycle {
    int p = 0;
    std::vector<int> vertices;
    std::vector<int> edges;
    Homotopy h;
};

}  // namespace

// kPairOf[i][j] for colors 1..4, -1 on the diagonal.
constexpr signed char kPairOf[5][5] = {
    {-1, -1, -1, -1, -1}, {-1, -1, 0, 1, 2}, {-1, 0, -1, 3, 4}, {-1, 1, 3, -1, 5}, {-1, 2, 4, 5, -1}};

int pair_index(int i, int j) {
    if (i > j) std::swap(i, j);
    for (int p = 0; p < 6; ++p)
        if (kPairA[p] == i && kPairB[p] == j) return p;
    throw std::invalid_argument("color pair outside 1..4");
}

std::pair<int, int> pair_colors(int p) { return {kPairA[p], kPairB[p]}; }

int algcr(Homotopy h1, Homotopy h2) { return h1.a * h2.b - h1.b * h2.a; }

struct NsReducer::Impl {
    const Triangulation& T;
    int n, E, F;
    std::vector<signed char> epair;  // pair of a non-singular edge, else -1
    std::vector<int> inc_count;             // per (pair, vertex)
    std::vector<std::array<int, 2>> inc;    // per (pair, vertex)
    std::vector<char> on_cycle_v;
    std::vector<char> cut;
    std::vector<int> face_comp;
    std::vector<int> stack;
    std::vector<int> labels;
    std::vector<char> vmark;
    std::vector<char> emark;
    std::vector<char> interior;
    std::array<std::vector<Cycle>, 6> cycles;  // first ncyc[p] entries are live
    std::array<int, 6> ncyc{};
    std::vector<int> comp_faces;

    explicit Impl(const Triangulation& t)
        : T(t), n(t.num_vertices()), E(t.num_edges()), F(t.num_faces()), epair(E), inc_count(6 * n), inc(6 * n),
          on_cycle_v(n), cut(E), face_comp(F), labels(n), vmark(n), emark(E), interior(n) {}

    int classify(const std::uint8_t* col) {
        int count = 0;
        for (int e = 0; e < E; ++e) {
            const Edge& ed = T.edge(e);
            int cu = col[ed.u], cv = col[ed.v];
            if (cu == cv) throw std::invalid_argument("coloring is not proper");
            if (col[ed.apex[0]] != col[ed.apex[1]]) {
                if (cu < 1 || cu > 4 || cv < 1 || cv > 4) throw std::invalid_argument("color pair outside 1..4");
                epair[e] = kPairOf[cu][cv];
                ++count;
            } else {
                epair[e] = -1;
            }
        }
        return count;
    }

    Homotopy homotopy_of(long dx, long dy) const {
        if (dy % T.s()) throw InvariantViolation("cycle displacement not a lattice vector");
        long b = dy / T.s();
        long ax = dx + b * T.t();
        if (ax % T.r()) throw InvariantViolation("cycle displacement not a lattice vector");
        return {static_cast<int>(ax / T.r()), static_cast<int>(b)};
    }

    // Splits every N_p into cycles in one pass over the edges.
    void extract_all() {
        std::fill(inc_count.begin(), inc_count.end(), 0);
        for (int e = 0; e < E; ++e) {
            int p = epair[e];
            if (p < 0) continue;
            for (int w : {T.edge(e).u, T.edge(e).v}) {
                int k = p * n + w;
                if (inc_count[k] >= 2)
                    throw InvariantViolation("vertex with more than two incident non-singular edges of one pair");
                inc[k][inc_count[k]++] = e;
            }
        }
        for (int p = 0; p < 6; ++p) trace_cycles(p);
    }

    void extract(int p) {
        std::fill(inc_count.begin() + p * n, inc_count.begin() + (p + 1) * n, 0);
        for (int e = 0; e < E; ++e) {
            if (epair[e] != p) continue;
            for (int w : {T.edge(e).u, T.edge(e).v}) {
                int k = p * n + w;
                if (inc_count[k] >= 2)
                    throw InvariantViolation("vertex with more than two incident non-singular edges of one pair");
                inc[k][inc_count[k]++] = e;
            }
        }
        trace_cycles(p);
    }

    void trace_cycles(int p) {
        auto& out = cycles[p];
        ncyc[p] = 0;
        const int* cnt = inc_count.data() + p * n;
        const std::array<int, 2>* in = inc.data() + p * n;
        std::fill(vmark.begin(), vmark.end(), 0);
        for (int v0 = 0; v0 < n; ++v0) {
            if (cnt[v0] == 0 || vmark[v0]) continue;
            if (cnt[v0] != 2) throw InvariantViolation("non-singular edge set is not a union of cycles");
            if (static_cast<int>(out.size()) <= ncyc[p]) out.emplace_back();
            Cycle& c = out[ncyc[p]++];
            c.p = p;
            c.vertices.clear();
            c.edges.clear();
            long dx = 0, dy = 0;
            int cur = v0, e = in[v0][0];
            while (true) {
                const Edge& ed = T.edge(e);
                int next = ed.u == cur ? ed.v : ed.u;
                int d = ed.u == cur ? ed.dir : opposite(ed.dir);
                dx += kDx[d];
                dy += kDy[d];
                vmark[cur] = 1;
                c.vertices.push_back(cur);
                c.edges.push_back(e);
                cur = next;
                if (cur == v0) break;
                if (cnt[cur] != 2) throw InvariantViolation("non-singular edge set is not a union of cycles");
                e = in[cur][0] == e ? in[cur][1] : in[cur][0];
            }
            c.h = homotopy_of(dx, dy);
        }
    }

    // Labels faces by component after cutting along the marked edges.
    int face_components() {
        std::fill(face_comp.begin(), face_comp.end(), -1);
        comp_faces.clear();
        int k = 0;
        for (int f0 = 0; f0 < F; ++f0) {
            if (face_comp[f0] >= 0) continue;
            face_comp[f0] = k;
            comp_faces.push_back(0);
            stack.clear();
            stack.push_back(f0);
            while (!stack.empty()) {
                int f = stack.back();
                stack.pop_back();
                ++comp_faces[k];
                for (int e : T.face_edges(f)) {
                    if (cut[e]) continue;
                    const Edge& ed = T.edge(e);
                    int g = ed.face[0] == f ? ed.face[1] : ed.face[0];
                    if (face_comp[g] < 0) {
                        face_comp[g] = k;
                        stack.push_back(g);
                    }
                }
            }
            ++k;
        }
        return k;
    }

    struct RegionStats {
        int faces = 0, edges = 0, vertices = 0, min_face = -1;
        int euler() const { return vertices - edges + faces; }
    };

    RegionStats region_stats(int comp) {
        RegionStats st;
        std::fill(vmark.begin(), vmark.end(), 0);
        std::fill(emark.begin(), emark.end(), 0);
        for (int f = 0; f < F; ++f) {
            if (face_comp[f] != comp) continue;
            if (st.min_face < 0) st.min_face = f;
            ++st.faces;
            for (int v : T.face(f))
                if (!vmark[v]) {
                    vmark[v] = 1;
                    ++st.vertices;
                }
            for (int e : T.face_edges(f))
                if (!emark[e]) {
                    emark[e] = 1;
                    ++st.edges;
                }
        }
        return st;
    }

    // Swaps the two colors outside pair p on the interior of region comp.
    void surgery(std::uint8_t* col, int p, int comp, const ReduceOptions& opt, ReductionResult* log,
                 ReductionStep& step) {
        std::fill(interior.begin(), interior.end(), 0);
        for (int f = 0; f < F; ++f)
            if (face_comp[f] == comp)
                for (int v : T.face(f))
                    if (!on_cycle_v[v]) interior[v] = 1;
        int k = 0, l = 0;
        for (int c = 1; c <= 4; ++c)
            if (c != kPairA[p] && c != kPairB[p]) (k ? l : k) = c;
        if (log && opt.log_moves) {
            kempe_labels(T, col, k, l, labels, stack);
            std::vector<int> seen;
            for (int v = 0; v < n; ++v)
                if (interior[v] && labels[v] >= 0 && std::find(seen.begin(), seen.end(), labels[v]) == seen.end())
                    seen.push_back(labels[v]);
            for (int id : seen) {
                KempeMove m;
                m.a = k;
                m.b = l;
                for (int v = 0; v < n; ++v)
                    if (labels[v] == id) {
                        if (opt.checked && !interior[v])
                            throw InvariantViolation("K-component leaves the surgery region");
                        m.component.push_back(v);
                    }
                log->moves.push_back(std::move(m));
            }
        }
        int swapped = 0;
        for (int v = 0; v < n; ++v)
            if (interior[v] && (col[v] == k || col[v] == l)) {
                col[v] = static_cast<std::uint8_t>(col[v] == k ? l : k);
                ++swapped;
            }
        step.swapped_vertices = swapped;
    }

    void mark_cycle(const Cycle& c) {
        for (int e : c.edges) cut[e] = 1;
        for (int v : c.vertices) on_cycle_v[v] = 1;
    }

    void clear_marks() {
        std::fill(cut.begin(), cut.end(), 0);
        std::fill(on_cycle_v.begin(), on_cycle_v.end(), 0);
    }

    // One surgery if available. Returns false when NS-minimal.
    bool step(std::uint8_t* col, const ReduceOptions& opt, ReductionResult* log, int ns_before) {
        extract_all();
        ReductionStep st;
        st.ns_before = ns_before;
        for (int p = 0; p < 6; ++p)
            for (int ci = 0; ci < ncyc[p]; ++ci) {
                const Cycle& c = cycles[p][ci];
                if (c.h.a != 0 || c.h.b != 0) continue;
                clear_marks();
                mark_cycle(c);
                if (face_components() != 2) throw InvariantViolation("contractible cycle does not split the faces in two");
                int disk;
                if (opt.checked) {
                    RegionStats s0 = region_stats(0), s1 = region_stats(1);
                    disk = s0.euler() == 1 ? 0 : s1.euler() == 1 ? 1 : -1;
                    if (disk < 0 || (disk == 0 ? s1 : s0).euler() != -1)
                        throw InvariantViolation("contractible cycle does not bound a disk");
                } else {
                    disk = region_stats(0).euler() == 1 ? 0 : 1;
                }
                st.kind = "disk";
                st.i = kPairA[p];
                st.j = kPairB[p];
                st.region_faces = comp_faces[disk];
                surgery(col, p, disk, opt, log, st);
                if (log) log->steps.push_back(st);
                return true;
            }
        for (int p = 0; p < 6; ++p) {
            if (ncyc[p] < 2) continue;
            const Cycle& c1 = cycles[p][0];
            const Cycle& c2 = cycles[p][1];
            if (!same_class(c1.h, c2.h)) throw InvariantViolation("disjoint non-singular cycles with different homotopy");
            clear_marks();
            mark_cycle(c1);
            mark_cycle(c2);
            if (face_components() != 2) throw InvariantViolation("two parallel cycles do not bound two cylinders");
            if (opt.checked) {
                RegionStats s0 = region_stats(0), s1 = region_stats(1);
                if (s0.euler() != 0 || s1.euler() != 0)
                    throw InvariantViolation("region between parallel cycles is not a cylinder");
            }
            // Component 0 holds face 0, the least face index, so ties go to it.
            int pick = comp_faces[1] < comp_faces[0] ? 1 : 0;
            st.kind = "cylinder";
            st.i = kPairA[p];
            st.j = kPairB[p];
            st.region_faces = comp_faces[pick];
            surgery(col, p, pick, opt, log, st);
            if (log) log->steps.push_back(st);
            return true;
        }
        return false;
    }
};

NsReducer::NsReducer(const Triangulation& T) : impl_(new Impl(T)) {}
NsReducer::~NsReducer() { delete impl_; }

int NsReducer::reduce(std::uint8_t* col, const ReduceOptions& opt, ReductionResult* log) {
    Impl& I = *impl_;
    int steps = 0;
    int ns = I.classify(col);
    std::vector<signed char> before;
    while (true) {
        if (opt.checked) before = I.epair;
        if (!I.step(col, opt, log, ns)) break;
        ++steps;
        int ns2 = I.classify(col);
        if (opt.checked) {
            if (ns2 >= ns) throw InvariantViolation("surgery did not decrease the non-singular edge count");
            for (int e = 0; e < I.E; ++e)
                if (I.epair[e] >= 0 && before[e] < 0) throw InvariantViolation("surgery created a new non-singular edge");
            for (int e = 0; e < I.E; ++e)
                if (col[I.T.edge(e).u] == col[I.T.edge(e).v]) throw InvariantViolation("surgery broke properness");
        }
        if (log) log->steps.back().ns_after = ns2;
        ns = ns2;
        if (steps > I.E) throw InvariantViolation("reduction did not terminate within |E| steps");
    }
    return steps;
}

EdgeClassification classify_edges(const Triangulation& T, const Coloring& c) {
    if (c.q != 4 || !c.same_shape(T)) throw std::invalid_argument("classify_edges needs a 4-coloring of T");
    EdgeClassification out;
    out.singular.assign(T.num_edges(), 0);
    for (int e = 0; e < T.num_edges(); ++e) {
        const Edge& ed = T.edge(e);
        if (c[ed.u] == c[ed.v]) throw std::invalid_argument("coloring is not proper");
        if (c[ed.apex[0]] == c[ed.apex[1]]) {
            out.singular[e] = 1;
        } else {
            out.buckets[pair_index(c[ed.u], c[ed.v])].push_back(e);
            ++out.nonsingular;
        }
    }
    return out;
}

std::vector<NsCycle> ns_cycles(const Triangulation& T, const Coloring& c, int i, int j) {
    if (c.q != 4 || !c.same_shape(T)) throw std::invalid_argument("ns_cycles needs a 4-coloring of T");
    NsReducer::Impl I(T);
    I.classify(c.a.data());
    int p = pair_index(i, j);
    I.extract(p);
    std::vector<NsCycle> out;
    for (int k = 0; k < I.ncyc[p]; ++k) {
        const Cycle& cy = I.cycles[p][k];
        NsCycle nc;
        nc.i = kPairA[p];
        nc.j = kPairB[p];
        nc.vertices = cy.vertices;
        nc.edges = cy.edges;
        nc.homotopy = cy.h;
        nc.contractible = cy.h.a == 0 && cy.h.b == 0;
        out.push_back(std::move(nc));
    }
    return out;
}

ReductionResult ns_minimal_reduce(const Triangulation& T, const Coloring& c, const ReduceOptions& opt) {
    if (c.q != 4 || !c.same_shape(T)) throw std::invalid_argument("ns_minimal_reduce needs a 4-coloring of T");
    if (!is_three_colorable(T.r(), T.s(), T.t())) throw std::invalid_argument("ns_minimal_reduce needs a 3-colorable T");
    if (!is_proper(T, c)) throw std::invalid_argument("coloring is not proper");
    ReductionResult res;
    res.coloring = c;
    NsReducer red(T);
    red.reduce(res.coloring.a.data(), opt, &res);
    return res;
}

StructureReport check_ns_minimal_structure(const Triangulation& T, const Coloring& c) {
    StructureReport rep;
    rep.degree = degree(T, c).degree;
    EdgeClassification ec = classify_edges(T, c);
    if (ec.nonsingular == 0) {
        rep.trivial = true;
        int used = 0;
        for (int col = 1; col <= 4; ++col)
            used += std::find(c.a.begin(), c.a.end(), col) != c.a.end();
        rep.ok = used == 3;
        if (!rep.ok) rep.failures.push_back("no non-singular edges but not a 3-coloring");
        return rep;
    }
    bool all_single = true;
    for (int p = 0; p < 6; ++p) {
        auto cyc = ns_cycles(T, c, kPairA[p], kPairB[p]);
        rep.cycle_counts[p] = static_cast<int>(cyc.size());
        if (cyc.size() != 1) {
            all_single = false;
            rep.failures.push_back("N" + std::to_string(kPairA[p]) + std::to_string(kPairB[p]) + " has " +
                                   std::to_string(cyc.size()) + " cycles");
            continue;
        }
        rep.homotopy[p] = cyc[0].homotopy;
        if (cyc[0].contractible)
            rep.failures.push_back("N" + std::to_string(kPairA[p]) + std::to_string(kPairB[p]) + " is contractible");
    }
    if (all_single) {
        for (int p = 0; p < 6; ++p)
            for (int p2 = p + 1; p2 < 6; ++p2) {
                bool disjoint = kPairA[p] != kPairA[p2] && kPairA[p] != kPairB[p2] && kPairB[p] != kPairA[p2] &&
                                kPairB[p] != kPairB[p2];
                bool hom = same_class(rep.homotopy[p], rep.homotopy[p2]);
                if (hom != disjoint)
                    rep.failures.push_back("N" + std::to_string(kPairA[p]) + std::to_string(kPairB[p]) + " vs N" +
                                           std::to_string(kPairA[p2]) + std::to_string(kPairB[p2]) +
                                           (disjoint ? " should be homotopic" : " should not be homotopic"));
            }
        rep.algcr_abs = {std::abs(algcr(rep.homotopy[0], rep.homotopy[1])),
                         std::abs(algcr(rep.homotopy[0], rep.homotopy[2])),
                         std::abs(algcr(rep.homotopy[1], rep.homotopy[2]))};
        if (rep.algcr_abs[0] != rep.algcr_abs[1] || rep.algcr_abs[1] != rep.algcr_abs[2])
            rep.failures.push_back("algebraic crossing numbers differ");
    }
    long m4 = ((rep.degree % 4) + 4) % 4;
    if (m4 != 2) rep.failures.push_back("degree " + std::to_string(rep.degree) + " is not 2 mod 4");
    rep.ok = rep.failures.empty();
    return rep;
}

}  // namespace kempe
