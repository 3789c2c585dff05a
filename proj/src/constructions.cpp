#include "kempe/constructions.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "kempe/degree.hpp"
#include "kempe/errors.hpp"

namespace kempe {

namespace {

using Rule = std::function<int(int x, int y)>;

// Colors counter-diagonals of T(M,M,0) one at a time. A vertex whose
// admissible colors meet the pair in one color is forced; if they miss the
// pair, the single admissible color is taken (an exception vertex); if both
// pair colors are admissible the vertex is free and a rule decides.
class DiagonalEngine {
public:
    DiagonalEngine(int M, const ConstructOptions& opt) : T_(Triangulation::build(M, M, 0)), M_(M), opt_(opt) {
        g_.assign(T_.num_vertices(), 0);
    }

    const Triangulation& tri() const { return T_; }
    int at(int x, int y) const { return g_[T_.wrap(x, y)]; }
    void put(int x, int y, int c) { g_[T_.wrap(x, y)] = c; }
    int wrapj(int j) const { return ((j - 1) % M_ + M_) % M_ + 1; }

    std::vector<int> diag(int j) const { return counter_diagonal(T_, wrapj(j)); }

    void set(int j, const Rule& f) {
        for (int v : diag(j)) {
            Coord p = T_.coord(v);
            g_[v] = f(p.x, p.y);
        }
        cur_.diagonals.push_back(wrapj(j));
    }

    // Rule may return 0 to leave a free vertex for the caller.
    void color(int j, int a, int b, const Rule& rule = nullptr) {
        std::vector<int> vs = diag(j);
        std::vector<std::pair<int, int>> forced;
        std::vector<int> free;
        for (int v : vs) {
            unsigned used = 0;
            for (int w : T_.neighbors(v)) used |= 1u << g_[w];
            std::vector<int> adm;
            for (int c = 1; c <= 4; ++c)
                if (!(used >> c & 1u)) adm.push_back(c);
            int na = 0, pick = 0;
            for (int c : adm)
                if (c == a || c == b) {
                    ++na;
                    pick = c;
                }
            if (na == 1) {
                forced.push_back({v, pick});
            } else if (na == 0) {
                if (adm.size() != 1)
                    throw InvariantViolation("construction: vertex " + str(v) + " on D" + std::to_string(wrapj(j)) +
                                             " has " + std::to_string(adm.size()) + " admissible colors off the pair");
                forced.push_back({v, adm[0]});
                cur_.exceptions.push_back(T_.coord(v));
            } else {
                free.push_back(v);
            }
        }
        for (auto [v, c] : forced) g_[v] = c;
        for (int v : free) {
            Coord p = T_.coord(v);
            cur_.free.push_back(p);
            if (!rule) throw InvariantViolation("construction: free vertex " + str(v) + " on D" + std::to_string(wrapj(j)));
            int c = rule(p.x, p.y);
            if (c && c != a && c != b) throw InvariantViolation("construction: rule left the color pair");
            g_[v] = c;
        }
        cur_.diagonals.push_back(wrapj(j));
    }

    int count_on(int j, int c) const {
        int n = 0;
        for (int v : diag(j)) n += g_[v] == c;
        return n;
    }

    void expect_exceptions(std::vector<Coord> want) { expect(cur_.exceptions, std::move(want), "exception"); }
    void expect_free(std::vector<Coord> want) { expect(cur_.free, std::move(want), "free"); }

    // Closes the current step and records its partial degree.
    void end_step(const std::string& label) {
        cur_.label = label;
        cur_.partial_degree = partial_degree(T_, g_);
        if (opt_.snapshots) cur_.snapshot = g_;
        trace_.steps.push_back(std::move(cur_));
        cur_ = TraceStep{};
    }

    // Exceptions of the last color() call only.
    std::vector<Coord> last_exceptions_since(std::size_t mark) const {
        return {cur_.exceptions.begin() + static_cast<long>(mark), cur_.exceptions.end()};
    }
    std::size_t exception_mark() const { return cur_.exceptions.size(); }
    std::size_t free_mark() const { return cur_.free.size(); }
    const TraceStep& current() const { return cur_; }

    ConstructionTrace& trace() { return trace_; }
    const std::vector<int>& colors() const { return g_; }

private:
    std::string str(int v) const {
        Coord p = T_.coord(v);
        return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
    }

    void expect(const std::vector<Coord>& got_all, std::vector<Coord> want, const char* what) {
        if (!opt_.checked) return;
        // Compares the tail of the step list with the same size as want.
        if (got_all.size() < want.size()) fail(what);
        std::vector<Coord> got(got_all.end() - static_cast<long>(want.size()), got_all.end());
        auto key = [](const Coord& c) { return std::pair(c.y, c.x); };
        auto lt = [&](const Coord& p, const Coord& q) { return key(p) < key(q); };
        for (auto& c : want) c = T_.coord(T_.wrap(c.x, c.y));
        std::sort(got.begin(), got.end(), lt);
        std::sort(want.begin(), want.end(), lt);
        if (got != want) fail(what);
    }

    [[noreturn]] void fail(const char* what) {
        throw InvariantViolation(std::string("construction: ") + what + " vertices differ from the case table");
    }

    Triangulation T_;
    int M_;
    ConstructOptions opt_;
    std::vector<int> g_;
    TraceStep cur_;
    ConstructionTrace trace_;
};

// Runs one color() call and checks its exception set in checked mode.
void color_expect(DiagonalEngine& e, int j, int a, int b, std::vector<Coord> exc, const Rule& rule = nullptr) {
    std::size_t mark = e.exception_mark();
    e.color(j, a, b, rule);
    std::size_t got = e.exception_mark() - mark;
    if (got != exc.size()) throw InvariantViolation("construction: exception count differs from the case table on D" + std::to_string(e.wrapj(j)));
    if (!exc.empty()) e.expect_exceptions(std::move(exc));
}

void color_plain(DiagonalEngine& e, int j, int a, int b, const Rule& rule = nullptr) {
    std::size_t mark = e.exception_mark();
    e.color(j, a, b, rule);
    if (e.exception_mark() != mark)
        throw InvariantViolation("construction: unexpected exception vertex on D" + std::to_string(e.wrapj(j)));
}

// L = 4k-1 on T(12k-3, 12k-3).
void case_4k_minus_1(DiagonalEngine& e, int k) {
    const int M = 12 * k - 3;
    e.set(1, [&](int x, int) { return x <= 6 * k - 1 ? 1 : 2; });
    e.set(2, [&](int x, int) { return (3 * k + 1 <= x && x <= 9 * k - 1) ? 3 : 4; });
    color_plain(e, M, 3, 4);
    color_plain(e, 3, 1, 2);
    color_plain(e, M - 1, 1, 2);
    e.end_step("step 1");
    int j = 3;
    for (int i = 0; i < 3 * (k - 1); ++i, j += 2) {
        color_plain(e, j + 1, 3, 4);
        color_plain(e, 12 * k - j - 2, 3, 4);
        color_plain(e, j + 2, 1, 2);
        color_plain(e, 12 * k - j - 3, 1, 2);
    }
    e.end_step("step 2");
    color_expect(e, 6 * k - 2, 1, 2, {{3 * k - 1, 3 * k - 1}, {9 * k - 2, 9 * k - 3}});
    color_plain(e, 6 * k + 1, 3, 4);
    e.end_step("step 3");
    color_plain(e, 6 * k - 1, 3, 4);
    e.end_step("step 4: D(6k-1)");
    color_plain(e, 6 * k, 1, 2);
    e.end_step("step 4");
}

// L = 4k on T(12k, 12k).
void case_4k(DiagonalEngine& e, int k) {
    const int M = 12 * k;
    e.set(1, [&](int x, int) { return x <= 6 * k ? 1 : 2; });
    e.set(2, [&](int x, int) { return (3 * k + 2 <= x && x <= 9 * k + 1) ? 3 : 4; });
    color_plain(e, M, 3, 4);
    color_plain(e, 3, 1, 2);
    color_plain(e, M - 1, 1, 2);
    color_plain(e, 4, 3, 4);
    color_plain(e, M - 2, 3, 4);
    e.end_step("step 1");
    int j = 4;
    for (int i = 0; i < 3 * (k - 1); ++i, j += 2) {
        color_plain(e, j + 1, 1, 2);
        color_plain(e, 12 * k - j + 1, 1, 2);
        color_plain(e, j + 2, 3, 4);
        color_plain(e, 12 * k - j, 3, 4);
    }
    e.end_step("step 2");
    color_expect(e, 6 * k - 1, 3, 4, {{12 * k, 6 * k - 1}, {6 * k, 12 * k - 1}});
    color_plain(e, 6 * k + 3, 1, 2);
    e.end_step("step 3");
    // Free vertices left of x = 6k copy (1,6k-1), the rest copy (6k,12k);
    // both anchors sit on D(6k) and are forced.
    color_plain(e, 6 * k, 1, 2, [&](int x, int) { return x < 6 * k ? e.at(1, 6 * k - 1) : e.at(6 * k, 12 * k); });
    std::size_t fm = e.free_mark();
    color_plain(e, 6 * k + 1, 3, 4, [&](int x, int y) {
        if (x == 1 && y == 6 * k) return 4;
        if (x == 6 * k + 1 && y == 12 * k) return 3;
        return 0;
    });
    if (e.free_mark() - fm != 2) throw InvariantViolation("construction: D(6k+1) free vertices differ from the case table");
    e.expect_free({{1, 6 * k}, {6 * k + 1, 12 * k}});
    e.end_step("step 4");
    if (k % 2)
        color_expect(e, 6 * k + 2, 3, 4, {{2, 6 * k}, {6 * k + 2, 12 * k}});
    else
        color_expect(e, 6 * k + 2, 3, 4, {{6 * k + 1, 1}, {1, 6 * k + 1}});
    e.end_step("step 5");
}

// L = 4k+1 on T(12k+3, 12k+3).
void case_4k_plus_1(DiagonalEngine& e, int k) {
    const int M = 12 * k + 3;
    e.set(1, [&](int x, int) { return x <= 6 * k + 2 ? 1 : 2; });
    e.set(2, [&](int x, int) { return (3 * k + 3 <= x && x <= 9 * k + 3) ? 3 : 4; });
    color_plain(e, M, 3, 4);
    for (int jj : {3, 5, M - 1, M - 3}) color_plain(e, jj, 1, 2);
    for (int jj : {4, M - 2}) color_plain(e, jj, 3, 4);
    e.end_step("step 1");
    int j = 5;
    for (int i = 0; i < 3 * (k - 1); ++i, j += 2) {
        color_plain(e, j + 1, 3, 4);
        color_plain(e, 12 * k - j + 4, 3, 4);
        color_plain(e, j + 2, 1, 2);
        color_plain(e, 12 * k - j + 3, 1, 2);
    }
    e.end_step("step 2");
    color_expect(e, 6 * k, 1, 2, {{3 * k, 3 * k}, {9 * k + 2, 9 * k + 1}});
    color_expect(e, 6 * k + 5, 1, 2, {{3 * k + 3, 3 * k + 2}, {9 * k + 4, 9 * k + 4}});
    e.end_step("step 3: D(6k), D(6k+5)");
    const int A = k % 2 ? 3 : 4, B = 7 - A;
    color_plain(e, 6 * k + 1, 3, 4, [&](int x, int) { return (3 * k + 1 < x && x < 9 * k + 2) ? A : B; });
    const int n3 = e.count_on(6 * k + 1, 3);
    color_plain(e, 6 * k + 4, 3, 4, [&](int x, int y) {
        if (x == 3 * k + 1 && y == 3 * k + 3) return 0;
        return (3 * k + 3 < x && x < 9 * k + 3) ? A : B;
    });
    if (e.at(3 * k + 1, 3 * k + 3) != 0) throw InvariantViolation("construction: (3k+1,3k+3) is not free on D(6k+4)");
    e.put(3 * k + 1, 3 * k + 3, e.count_on(6 * k + 4, 3) < n3 ? 3 : 4);
    e.end_step("step 3");
    std::size_t fm = e.free_mark();
    color_plain(e, 6 * k + 2, 1, 2, [&](int, int) { return e.at(9 * k + 2, 9 * k + 3); });
    if (e.free_mark() - fm != 2) throw InvariantViolation("construction: D(6k+2) free vertices differ from the case table");
    e.expect_free({{3 * k + 1, 3 * k + 1}, {9 * k + 3, 9 * k + 2}});
    color_expect(e, 6 * k + 3, 3, 4, {{3 * k + 2, 3 * k + 1}, {3 * k, 3 * k + 3}, {9 * k + 3, 9 * k + 3}, {9 * k + 2, 9 * k + 4}});
    e.end_step("step 4");
}

// L = 4k-2, k >= 2, on T(12k-6, 12k-6).
void case_4k_minus_2(DiagonalEngine& e, int k) {
    const int M = 12 * k - 6;
    e.set(1, [&](int x, int) { return x <= 6 * k - 3 ? 1 : 2; });
    e.set(2, [&](int x, int) { return (3 * k <= x && x <= 9 * k - 4) ? 3 : 4; });
    color_plain(e, M, 3, 4);
    color_plain(e, 3, 1, 2);
    color_plain(e, M - 1, 1, 2);
    color_plain(e, 4, 3, 4);
    color_plain(e, M - 2, 3, 4);
    color_plain(e, 5, 1, 2);
    color_plain(e, M - 3, 1, 2);
    e.end_step("step 1");
    int j = 5;
    for (int i = 0; i < 3 * (k - 2); ++i, j += 2) {
        color_plain(e, j + 1, 3, 4);
        color_plain(e, 12 * k - j - 5, 3, 4);
        color_plain(e, j + 2, 1, 2);
        color_plain(e, 12 * k - j - 6, 1, 2);
    }
    e.end_step("step 2");
    color_expect(e, 6 * k - 6, 1, 2, {{3 * k - 3, 3 * k - 3}, {9 * k - 6, 9 * k - 6}});
    color_expect(e, 6 * k + 2, 1, 2, {{3 * k + 1, 3 * k + 1}, {9 * k - 2, 9 * k - 2}});
    // The anchors lie on the diagonal being colored and are forced, so they
    // are read once the forced vertices are in place.
    int C1 = 0;
    color_plain(e, 6 * k - 5, 3, 4, [&](int x, int) {
        if (!C1) C1 = e.at(3 * k - 2, 3 * k - 3);
        return (3 * k - 1 <= x && x <= 9 * k - 5) ? 7 - C1 : C1;
    });
    if (!C1) C1 = e.at(3 * k - 2, 3 * k - 3);
    int c1b = 0;
    color_plain(e, 6 * k + 1, 3, 4, [&](int x, int) {
        if (!c1b) c1b = e.at(3 * k + 1, 3 * k);
        return (3 * k + 2 <= x && x <= 9 * k - 4) ? 7 - c1b : c1b;
    });
    e.end_step("step 3");
    std::size_t fm = e.free_mark();
    color_plain(e, 6 * k - 4, 1, 2, [&](int x, int y) { return e.at(x, y - 1) == 4 ? 1 : 2; });
    if (e.free_mark() - fm != 2) throw InvariantViolation("construction: D(6k-4) free vertices differ from the case table");
    e.expect_free({{3 * k - 2, 3 * k - 2}, {9 * k - 5, 9 * k - 5}});
    // Free vertices on D(6k) follow the forced vertices of the same x-range.
    int in_color = 0, out_color = 0;
    bool scanned = false;
    auto in_range = [&](int x) { return 3 * k <= x && x <= 9 * k - 4; };
    fm = e.free_mark();
    color_plain(e, 6 * k, 1, 2, [&](int x, int) {
        if (!scanned) {
            for (int v : e.diag(6 * k)) {
                Coord p = e.tri().coord(v);
                int c = e.colors()[v];
                if (!c) continue;
                int& slot = in_range(p.x) ? in_color : out_color;
                if (slot && slot != c) throw InvariantViolation("construction: D(6k) forced colors are not uniform");
                slot = c;
            }
            scanned = true;
        }
        return in_range(x) ? in_color : out_color;
    });
    if (e.free_mark() - fm != 2) throw InvariantViolation("construction: D(6k) free vertices differ from the case table");
    e.expect_free({{3 * k, 3 * k}, {9 * k - 3, 9 * k - 3}});
    color_expect(e, 6 * k - 3, 1, 2, {{3 * k - 1, 3 * k - 2}, {9 * k - 4, 9 * k - 5}});
    color_plain(e, 6 * k - 2, 3, 4, [&](int x, int) { return (3 * k + 1 <= x && x <= 9 * k - 2) ? 7 - C1 : C1; });
    color_expect(e, 6 * k - 1, 3, 4,
                 {{3 * k + 1, 3 * k - 2}, {3 * k, 3 * k - 1}, {9 * k - 1, 9 * k - 6}, {9 * k - 2, 9 * k - 5}, {9 * k - 3, 9 * k - 4}});
    e.end_step("step 4");
}

Triangulation tri_of(const Coloring& c) { return Triangulation::build(c.r, c.s, c.t); }

}  // namespace

std::pair<Coloring, ConstructionTrace> construct_deg6_symmetric(int L, const ConstructOptions& opt) {
    if (L < 2) throw std::invalid_argument("construct_deg6_symmetric needs L >= 2");
    if (L == 2) {
        Triangulation T = Triangulation::build(6, 6, 0);
        Coloring c = nonsingular_coloring(T);
        ConstructionTrace tr;
        tr.L = 2;
        tr.family = "4k-2";
        tr.k = 1;
        TraceStep st;
        st.label = "non-singular coloring";
        st.partial_degree = degree(T, c).degree;
        if (opt.snapshots) st.snapshot.assign(c.a.begin(), c.a.end());
        tr.steps.push_back(st);
        return {c, tr};
    }
    const int M = 3 * L;
    DiagonalEngine e(M, opt);
    ConstructionTrace& tr = e.trace();
    tr.L = L;
    switch (L % 4) {
        case 3:
            tr.family = "4k-1";
            tr.k = (L + 1) / 4;
            case_4k_minus_1(e, tr.k);
            break;
        case 0:
            tr.family = "4k";
            tr.k = L / 4;
            case_4k(e, tr.k);
            break;
        case 1:
            tr.family = "4k+1";
            tr.k = (L - 1) / 4;
            case_4k_plus_1(e, tr.k);
            break;
        default:
            tr.family = "4k-2";
            tr.k = (L + 2) / 4;
            case_4k_minus_2(e, tr.k);
            break;
    }
    const auto& g = e.colors();
    if (std::find(g.begin(), g.end(), 0) != g.end()) throw InvariantViolation("construction left vertices uncolored");
    Coloring c(e.tri(), 4, std::vector<std::uint8_t>(g.begin(), g.end()));
    if (opt.checked) {
        if (!is_proper(e.tri(), c)) throw InvariantViolation("construction produced an improper coloring");
        DegreeReport d = degree(e.tri(), c);
        if (d.degree != tr.steps.back().partial_degree || d.mod12 != 6)
            throw InvariantViolation("construction degree is not 6 mod 12");
    }
    ConstructionTrace out = std::move(tr);
    return {std::move(c), std::move(out)};
}

Coloring extend_periodic(const Coloring& c, int p, int q) {
    if (p < 1 || q < 1) throw std::invalid_argument("extend_periodic needs p, q >= 1");
    if (c.t != 0) throw std::invalid_argument("extend_periodic is undefined across a twist");
    Triangulation T = Triangulation::build(c.r * p, c.s * q, 0);
    std::vector<std::uint8_t> a(T.num_vertices());
    for (int v = 0; v < T.num_vertices(); ++v) {
        Coord xy = T.coord(v);
        a[v] = c.a[(xy.y - 1) % c.s * c.r + (xy.x - 1) % c.r];
    }
    return Coloring(T, c.q, std::move(a));
}

std::array<std::string, 3> strip_patterns(int L) {
    if (L < 3) throw std::invalid_argument("strips are defined for L >= 3");
    auto P = [](const std::string& body, int n) { return "[" + body + "]^{" + std::to_string(n) + "} "; };
    std::string c1, c2, c3;
    switch (L % 4) {
        case 3: {  // L = 4k-1
            int k = (L + 1) / 4, t = (3 * k - 2) / 2;
            if (k % 2 == 0) {
                c3 = P("1423", t) + "1231" + P("3241", t) + "3";
                c2 = "3" + P("1423", t) + "142" + P("1324", t) + "2";
                c1 = "23" + P("1423", t) + "14" + P("2413", t) + "4";
            } else {
                c3 = P("1423", t) + "14214241" + P("3241", t) + "3";
                c2 = "3" + P("1423", t) + "1423124" + P("1324", t) + "2";
                c1 = "23" + P("1423", t) + "14231" + P("3241", t) + "34";
            }
            break;
        }
        case 0: {  // L = 4k
            int k = L / 4, t = (3 * k - 2) / 2;
            if (k % 2 == 0) {
                c3 = P("1423", t) + "1431341" + P("3241", t) + "3";
                c2 = "3" + P("1423", t) + "124132" + P("4132", t) + "4";
                c1 = "4" + P("2314", t) + "312413" + P("2413", t) + "2";
            } else {
                c3 = P("1423", t) + "14234231241" + P("3241", t) + "3";
                c2 = "3" + P("1423", t) + "1423423132" + P("4132", t) + "4";
                c1 = "4" + P("2314", t) + "2342312413" + P("2413", t) + "2";
            }
            break;
        }
        case 1: {  // L = 4k+1
            int k = (L - 1) / 4, t = (3 * k - 2) / 2;
            if (k % 2 == 0) {
                c3 = P("1423", t) + "1421423421" + P("3241", t) + "3";
                c2 = "3" + P("1423", t) + "14214213" + P("2413", t) + "42";
                c1 = "2" + P("3142", t) + "314214213" + P("2413", t) + "4";
            } else {
                // The published odd-k rows are not proper; these are the
                // nearest proper rows matching the construction's top row.
                c3 = P("1423", t + 1) + "1231431241" + P("3241", t) + "3";
                c2 = "3" + P("1423", t + 1) + "12312413" + P("2413", t) + "42";
                c1 = P("2314", t + 1) + "2312312413" + P("2413", t) + "4";
            }
            break;
        }
        default: {  // L = 4k-2, k >= 2
            int k = (L + 2) / 4, t = (3 * k - 6) / 2;
            if (k % 2 == 0) {
                c3 = P("1423", t + 1) + "124124324124 1" + P("3241", t) + "3";
                c2 = "3" + P("1423", t + 1) + "12412432413" + P("2413", t) + "42";
                c1 = P("2314", t + 1) + "2312412432413" + P("2413", t) + "4";
            } else {
                c3 = P("1423", t + 1) + "14213213413213" + P("2413", t + 1);
                c2 = P("3142", t + 1) + "3142132134 13" + P("2413", t + 1) + "42";
                c1 = P("2314", t + 1) + "2314213213413" + P("2413", t + 1) + "4";
            }
            break;
        }
    }
    return {c1, c2, c3};
}

Coloring build_strip(int L) {
    auto pats = strip_patterns(L);
    Triangulation T = Triangulation::build(3 * L, 3, 0);
    std::vector<std::vector<int>> rows;
    for (const auto& p : pats) rows.push_back(expand_row_pattern(p));
    return coloring_from_rows(T, rows);
}

Coloring glue_strip(const Coloring& c, const Coloring& strip) {
    if (c.t != 0 || strip.t != 0) throw std::invalid_argument("glue_strip needs untwisted tori");
    if (strip.s != 3 || strip.r != c.r) throw std::invalid_argument("strip must be T(r,3) with the base width");
    if (row_of(c, c.s) != row_of(strip, 3)) throw std::invalid_argument("top rows of the coloring and the strip differ");
    Triangulation T = Triangulation::build(c.r, c.s + 3, 0);
    std::vector<std::uint8_t> a = c.a;
    a.insert(a.end(), strip.a.begin(), strip.a.end());
    return Coloring(T, c.q, std::move(a));
}

Coloring construct_deg6(int L, int M) {
    if (L == 2) {
        if (M < 2 || M % 2 || (M / 2) % 2 == 0)
            throw std::invalid_argument("L = 2 needs M = 2 * odd");
        return extend_periodic(construct_deg6_symmetric(2).first, 1, M / 2);
    }
    if (L < 3 || M < L) throw std::invalid_argument("construct_deg6 needs L >= 3 and M >= L, or L = 2 with M/2 odd");
    Coloring c = construct_deg6_symmetric(L, ConstructOptions{false, false}).first;
    if (M > L) {
        Coloring strip = build_strip(L);
        for (int i = L; i < M; ++i) c = glue_strip(c, strip);
    }
    (void)tri_of;
    return c;
}

}  // namespace kempe
