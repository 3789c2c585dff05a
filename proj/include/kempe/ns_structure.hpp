#pragma once

#include <array>
#include <string>
#include <vector>

#include "kempe/coloring.hpp"
#include "kempe/dynamics.hpp"
#include "kempe/triangulation.hpp"

namespace kempe {

// Index of the unordered pair {i,j} among (12,13,14,23,24,34).
int pair_index(int i, int j);
std::pair<int, int> pair_colors(int p);

struct EdgeClassification {
    std::vector<char> singular;               // per edge id
    std::array<std::vector<int>, 6> buckets;  // non-singular edge ids per pair index
    int nonsingular = 0;
};

EdgeClassification classify_edges(const Triangulation& T, const Coloring& c);

struct Homotopy {
    int a = 0;  // horizontal winding
    int b = 0;  // vertical winding
    bool operator==(const Homotopy&) const = default;
};

// Equal as unoriented curves: (a,b) = +-(c,d).
inline bool same_class(Homotopy x, Homotopy y) { return x == y || (x.a == -y.a && x.b == -y.b); }

struct NsCycle {
    int i = 0, j = 0;
    std::vector<int> vertices;  // starts at the least vertex
    std::vector<int> edges;
    Homotopy homotopy;
    bool contractible = false;
};

std::vector<NsCycle> ns_cycles(const Triangulation& T, const Coloring& c, int i, int j);

int algcr(Homotopy h1, Homotopy h2);

struct ReductionStep {
    std::string kind;  // "disk" or "cylinder"
    int i = 0, j = 0;  // colors of the bounding cycle(s)
    int region_faces = 0;
    int swapped_vertices = 0;
    int ns_before = 0, ns_after = 0;
};

struct ReductionResult {
    Coloring coloring;
    std::vector<KempeMove> moves;
    std::vector<ReductionStep> steps;
};

struct ReduceOptions {
    bool checked = true;     // verify N(f') subset of N(f), strict decrease, properness
    bool log_moves = true;   // decompose each surgery into K-changes
};

ReductionResult ns_minimal_reduce(const Triangulation& T, const Coloring& c, const ReduceOptions& opt = {});

// Reusable reducer for bulk use. reduce() works in place on a color array.
class NsReducer {
public:
    explicit NsReducer(const Triangulation& T);
    ~NsReducer();
    NsReducer(const NsReducer&) = delete;
    NsReducer& operator=(const NsReducer&) = delete;
    // Returns the number of surgeries performed.
    int reduce(std::uint8_t* col, const ReduceOptions& opt, ReductionResult* log = nullptr);

    struct Impl;

private:
    Impl* impl_;
};

struct StructureReport {
    bool trivial = false;  // no non-singular edges: a 3-coloring
    bool ok = false;
    std::vector<std::string> failures;
    std::array<int, 6> cycle_counts{};
    std::array<Homotopy, 6> homotopy{};
    std::array<int, 3> algcr_abs{};  // (12,13), (12,14), (13,14)
    long degree = 0;
};

StructureReport check_ns_minimal_structure(const Triangulation& T, const Coloring& c);

}  // namespace kempe
