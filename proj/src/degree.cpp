#include "kempe/degree.hpp"

#include <cstdlib>
#include <stdexcept>

#include "kempe/errors.hpp"

namespace kempe {

namespace {

int mod(long a, int m) {
    long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

void require_four_coloring(const Triangulation& T, const Coloring& c) {
    if (c.q != 4) throw std::invalid_argument("degree is defined for q = 4 only");
    if (!is_proper(T, c)) throw std::invalid_argument("degree requires a proper coloring");
}

DegreeReport make_report(long p, long n) {
    DegreeReport d;
    d.p = p;
    d.n = n;
    d.degree = p - n;
    d.degree_abs = std::labs(d.degree);
    d.mod2 = mod(d.degree, 2);
    d.mod4 = mod(d.degree, 4);
    d.mod6 = mod(d.degree, 6);
    d.mod12 = mod(d.degree, 12);
    return d;
}

}  // namespace

int face_sign(int c0, int c1, int c2, const std::array<int, 3>& tg) {
    const int a = tg[0], b = tg[1], c = tg[2];
    if ((c0 == a && c1 == b && c2 == c) || (c0 == b && c1 == c && c2 == a) || (c0 == c && c1 == a && c2 == b)) return 1;
    if ((c0 == a && c1 == c && c2 == b) || (c0 == c && c1 == b && c2 == a) || (c0 == b && c1 == a && c2 == c)) return -1;
    return 0;
}

DegreeReport degree(const Triangulation& T, const Coloring& c, const std::array<int, 3>& target) {
    require_four_coloring(T, c);
    long p = 0, n = 0;
    for (const auto& f : T.faces()) {
        int sg = face_sign(c.a[f[0]], c.a[f[1]], c.a[f[2]], target);
        p += sg > 0;
        n += sg < 0;
    }
    return make_report(p, n);
}

DegreeReport degree_parallel(const Triangulation& T, const Coloring& c) {
    require_four_coloring(T, c);
    long p = 0, n = 0;
    const int F = T.num_faces();
    const auto& faces = T.faces();
#pragma omp parallel for reduction(+ : p, n) schedule(static)
    for (int i = 0; i < F; ++i) {
        const auto& f = faces[i];
        int sg = face_sign(c.a[f[0]], c.a[f[1]], c.a[f[2]]);
        p += sg > 0;
        n += sg < 0;
    }
    return make_report(p, n);
}

long partial_degree(const Triangulation& T, const std::vector<int>& colors, const std::vector<int>* subset) {
    if (static_cast<int>(colors.size()) != T.num_vertices()) throw std::invalid_argument("partial coloring size mismatch");
    long d = 0;
    auto scan = [&](int fi) {
        const auto& f = T.face(fi);
        int a = colors[f[0]], b = colors[f[1]], c = colors[f[2]];
        if (a && b && c) d += face_sign(a, b, c);
    };
    if (subset)
        for (int fi : *subset) scan(fi);
    else
        for (int fi = 0; fi < T.num_faces(); ++fi) scan(fi);
    return d;
}

int tutte_parity(const Triangulation& T, const Coloring& c, int a) {
    if (a < 1 || a > c.q) throw std::invalid_argument("invalid color");
    long sum = 0;
    for (int v = 0; v < T.num_vertices(); ++v)
        if (c.a[v] == a) sum += 6;  // every vertex has degree six
    return static_cast<int>(sum % 2);
}

ResidueRecord degree_residue_checks(const Triangulation& T, const Coloring& c) {
    if (!is_three_colorable(T.r(), T.s(), T.t()))
        throw std::invalid_argument("residue checks require a 3-colorable triangulation");
    DegreeReport d = degree(T, c);
    if (d.mod6 != 0)
        throw InvariantViolation("degree " + std::to_string(d.degree) + " is not divisible by 6 on " + T.descriptor());
    ResidueRecord out;
    out.degree = d.degree;
    out.degree_abs = d.degree_abs;
    out.mod12 = d.mod12;
    out.label = d.mod12 == 0 ? "ergodic-class" : "obstructed-class";
    return out;
}

long max_degree_bound(int L) {
    if (L < 1) throw std::invalid_argument("L must be positive");
    return static_cast<long>(9) * L * L / 2;
}

}  // namespace kempe
