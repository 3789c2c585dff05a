// Serial reference vs parallel kernel timings.
// Usage: kempe_bench [--quick] [--threads N]

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <omp.h>

#include "kempe/coloring.hpp"
#include "kempe/constructions.hpp"
#include "kempe/degree.hpp"
#include "kempe/state_space.hpp"

using namespace kempe;

template <class F>
double seconds(F&& f, int reps = 1) {
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const std::string& what, double serial, double parallel, const std::string& check) {
    std::cout << std::left << std::setw(34) << what << std::right << std::fixed << std::setprecision(4) << std::setw(10)
              << serial << std::setw(10) << parallel << std::setw(8) << std::setprecision(2) << serial / parallel << "x  "
              << check << "\n";
}

int main(int argc, char** argv) {
    bool quick = false;
    int threads = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--quick")) quick = true;
        if (!std::strcmp(argv[i], "--threads") && i + 1 < argc) threads = std::atoi(argv[++i]);
    }
    if (threads) omp_set_num_threads(threads);
    std::cout << "threads available: " << omp_get_max_threads() << "\n";
    std::cout << std::left << std::setw(34) << "kernel" << std::right << std::setw(10) << "serial" << std::setw(10)
              << "parallel" << std::setw(9) << "speedup" << "\n";

    {
        auto T = Triangulation::build(6, 6, 0);
        EnumerationResult a, b;
        double s = seconds([&] { a = enumerate_colorings_serial(T, 4); });
        double p = seconds([&] { b = enumerate_colorings(T, 4); });
        row("enumerate T(6,6) q=4", s, p, a.total == b.total ? "same total" : "MISMATCH");
    }
    {
        auto T = Triangulation::build(5, 4, 0);
        EnumerationResult a, b;
        double s = seconds([&] { a = enumerate_colorings_serial(T, 5); });
        double p = seconds([&] { b = enumerate_colorings(T, 5); });
        row("enumerate T(5,4) q=5", s, p, a.total == b.total ? "same total" : "MISMATCH");
    }
    {
        auto T = quick ? Triangulation::build(6, 3, 0) : Triangulation::build(6, 6, 0);
        ClassOptions bo, uo;
        bo.method = ClassMethod::Bfs;
        uo.method = ClassMethod::UnionFind;
        ClassDecomposition a, b;
        double s = seconds([&] { a = kempe_classes(T, 4, bo); });
        double p = seconds([&] { b = kempe_classes(T, 4, uo); });
        row("classes " + T.descriptor() + " bfs/uf", s, p, a.classes.size() == b.classes.size() ? "same classes" : "MISMATCH");
    }
    {
        auto [c, tr] = construct_deg6_symmetric(quick ? 20 : 60, {false, false});
        auto T = Triangulation::build(c.r, c.s, c.t);
        DegreeReport a, b;
        const int reps = 20;
        double s = seconds([&] { a = degree(T, c); }, reps);
        double p = seconds([&] { b = degree_parallel(T, c); }, reps);
        row("degree " + T.descriptor(), s, p, a.degree == b.degree ? "same degree" : "MISMATCH");
    }
}
