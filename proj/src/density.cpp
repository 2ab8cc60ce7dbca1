#include "pyjama/density.hpp"

#include <algorithm>
#include <numeric>

#include "pyjama/errors.hpp"
#include "pyjama/relations.hpp"

namespace pyjama {

PolySet uncovered_region(const Configuration& cfg, const Rat& eps, Exec exec, Budget* budget) {
    (void)exec;
    if (eps <= 0 || eps >= Rat(1, 2))
        throw std::invalid_argument("uncovered_region needs 0 < eps < 1/2");
    RelationLattice rl = relation_lattice(cfg);
    if (rl.dim_d > 2) throw UnsupportedDimension("uncovered region needs d <= 2");
    SubgroupParam sp = subgroup_param(rl);

    int n = sp.n(), d = sp.d();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    // Narrowest value ranges first keeps intermediate piece counts low.
    auto spread = [&](int j) {
        Int s = 0;
        for (int t = 0; t < d; ++t) s += abs(sp.B.at(j, t));
        return s;
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return spread(a) < spread(b); });

    PolySet region = PolySet::unit_square();
    for (int j : order) {
        Int p = sp.B.at(j, 0);
        Int q = d == 2 ? sp.B.at(j, 1) : Int(0);
        region = intersect_strip(region, p, q, Rat(0), eps, budget);
        if (region.empty()) break;
    }
    return region;
}

DensityVerdict density_test(const Configuration& cfg, const Rat& eps, Exec exec, Budget* budget) {
    RelationLattice rl = relation_lattice(cfg);
    if (rl.dim_d > 2)
        return {DensityVerdict::Kind::Unknown, std::nullopt, std::nullopt,
                "density test implemented for d <= 2 only"};

    PolySet x = uncovered_region(cfg, eps, exec, budget);
    PolySet comp = difference_set_complement(x, exec, budget);
    if (comp.empty())
        return {DensityVerdict::Kind::Dense, std::nullopt, std::nullopt,
                "difference set covers the torus; criterion inapplicable at this eps"};

    auto ball = inner_point_with_clearance(comp);
    if (!ball) throw std::logic_error("nonempty complement without an inner point");
    if (!ball_avoids_difference_set(x, ball->first, ball->second))
        throw std::logic_error("density certificate ball failed its audit");
    return {DensityVerdict::Kind::NotDense, ball->first, ball->second,
            "difference set misses a ball; eps_0 <= eps"};
}

std::optional<Rat> epsilon0_bound(const Configuration& cfg, const Rat& tol, Exec exec,
                                  Budget* budget, Rat* achieved_tol) {
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    RelationLattice rl = relation_lattice(cfg);
    if (rl.dim_d > 2) throw UnsupportedDimension("epsilon0_bound needs d <= 2");

    Rat hi = Rat(1, 2) - std::min(Rat(tol / 2), Rat(1, 128));
    Rat lo(0);
    if (achieved_tol) *achieved_tol = hi - lo;
    if (density_test(cfg, hi, exec, budget).kind != DensityVerdict::Kind::NotDense)
        return std::nullopt;
    while (hi - lo > tol) {
        Rat mid = (lo + hi) / 2;
        try {
            if (density_test(cfg, mid, exec, budget).kind == DensityVerdict::Kind::NotDense)
                hi = mid;
            else
                lo = mid;
        } catch (const BudgetExhausted&) {
            // hi already carries a certified NotDense verdict; report it at
            // the tolerance actually reached.
            break;
        }
    }
    if (achieved_tol) *achieved_tol = hi - lo;
    return hi;
}

}  // namespace pyjama
