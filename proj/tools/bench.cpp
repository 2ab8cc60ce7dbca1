// Serial-vs-OpenMP comparison for the two data-parallel kernels: the
// arrangement cell solver behind the exact covering radius, and the
// Minkowski pair expansion behind difference sets. Both paths must produce
// identical exact results; this binary checks that and reports timings.

#include <chrono>
#include <iostream>

#include "pyjama/cover.hpp"
#include "pyjama/density.hpp"
#include "pyjama/geometry.hpp"
#include "pyjama/relations.hpp"

using namespace pyjama;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void bench_radius_kernel() {
    // Pythagorean N=5 chart: 82 breaklines, a few thousand cells. The 1/2
    // shortcut is bypassed on purpose: the kernel itself is the benchmark.
    Configuration cfg = build_pythagorean(5);
    SubgroupParam sp = subgroup_param(relation_lattice(cfg));

    auto t0 = std::chrono::steady_clock::now();
    RadiusResult serial = chart_max_min(sp.B, Exec::Serial);
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    RadiusResult parallel = chart_max_min(sp.B, Exec::Parallel);
    double tp = seconds_since(t0);

    bool same = serial.value == parallel.value && serial.argmax == parallel.argmax;
    std::cout << "radius kernel (pythagorean N=5): serial " << ts << " s, openmp " << tp
              << " s, speedup " << (tp > 0 ? ts / tp : 0) << ", results "
              << (same ? "identical" : "DIFFER") << ", value " << rat_to_string(serial.value)
              << "\n";
    if (!same) std::exit(1);
}

void bench_diffset_kernel() {
    // Many-piece set: the cube-roots uncovered region at a small eps, unioned
    // with its quarter-shifted copy to get more pieces.
    Configuration cfg = build_cube_roots();
    PolySet x = uncovered_region(cfg, Rat(21, 100));
    PolySet shifted;
    {
        std::vector<ConvexPoly> pieces;
        for (const ConvexPoly& p : x.pieces()) {
            auto c = p.translated(Rat(1, 4), Rat(1, 8)).clipped(Rat(1), Rat(0), Rat(1));
            if (c) c = c->clipped(Rat(0), Rat(1), Rat(1));
            if (c) pieces.push_back(*c);
        }
        shifted = unite(x, PolySet::from_disjoint(pieces));
    }

    auto t0 = std::chrono::steady_clock::now();
    PolySet serial = difference_set(shifted, Exec::Serial);
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    PolySet parallel = difference_set(shifted, Exec::Parallel);
    double tp = seconds_since(t0);

    bool same = serial.pieces() == parallel.pieces();
    std::cout << "difference-set kernel (" << shifted.size() << " pieces): serial " << ts
              << " s, openmp " << tp << " s, speedup " << (tp > 0 ? ts / tp : 0) << ", results "
              << (same ? "identical" : "DIFFER") << ", area " << rat_to_string(serial.area())
              << "\n";
    if (!same) std::exit(1);
}

}  // namespace

int main() {
    std::cout << "threads: " << hardware_threads() << "\n";
    bench_radius_kernel();
    bench_diffset_kernel();
    return 0;
}
