#pragma once

#include <optional>
#include <string>

#include "pyjama/config.hpp"
#include "pyjama/geometry.hpp"

namespace pyjama {

// The closure of X_eps in chart coordinates: every strip constraint pulled
// back through the subgroup parametrization. Empty iff eps >= epsilon*.
// Throws UnsupportedDimension when d > 2.
PolySet uncovered_region(const Configuration& cfg, const Rat& eps, Exec exec = Exec::Serial,
                         Budget* budget = nullptr);

struct DensityVerdict {
    enum class Kind { NotDense, Dense, Unknown } kind;
    // NotDense: a closed ball certified to miss the closed difference set.
    std::optional<RatPoint2> center;
    std::optional<Rat> clearance;
    std::string reason;
};

// The difference-set criterion: NotDense implies eps_0 <= eps. Dense only
// means the criterion does not apply at this eps. Unknown for d > 2.
DensityVerdict density_test(const Configuration& cfg, const Rat& eps, Exec exec = Exec::Serial,
                            Budget* budget = nullptr);

// Smallest eps with a NotDense verdict, within tol (NotDense is monotone
// upward in eps). nullopt when even eps near 1/2 comes out Dense. A budget
// hit mid-bisection still returns the best certified bound; achieved_tol
// reports the bracket width actually reached.
std::optional<Rat> epsilon0_bound(const Configuration& cfg, const Rat& tol,
                                  Exec exec = Exec::Serial, Budget* budget = nullptr,
                                  Rat* achieved_tol = nullptr);

}  // namespace pyjama
