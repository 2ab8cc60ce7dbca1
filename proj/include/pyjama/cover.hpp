#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pyjama/config.hpp"
#include "pyjama/parallel.hpp"
#include "pyjama/relations.hpp"

namespace pyjama {

// ---------- exact covering radius (d <= 2) ----------

struct RadiusResult {
    Rat value;                // epsilon* = max over S of min_j ||x_j||
    std::vector<Rat> argmax;  // chart coordinates of a maximizer (length d)
};

// Exact epsilon*. Shortcuts: rank 0 and the all-halves membership test both
// give 1/2; otherwise the breakline arrangement of B is solved cell by cell.
// Throws UnsupportedDimension for d >= 3 without a 1/2 shortcut.
RadiusResult covering_radius_exact(const Configuration& cfg, Exec exec = Exec::Parallel);

// The arrangement kernel itself: max over T^d of min_j ||b_j . z|| for the
// rows of B, d in {1, 2}. Exposed for tests and the benchmark.
RadiusResult chart_max_min(const IntMat& B, Exec exec);

// ---------- replayable emptiness certificates ----------

// Tree semantics over a box in [eps, 1-eps]^n:
//  * Leaf(i): the interval of relation i over the box contains no integer.
//  * KBranch(i): one child per integer k in the interval of relation i; the
//    child box is tightened by projecting m_i . w = k onto each coordinate
//    once, in ascending coordinate order.
//  * Bisect(j): split coordinate j at its exact midpoint.
struct CertNode {
    enum class Kind { Leaf, KBranch, Bisect };
    Kind kind = Kind::Leaf;
    int index = 0;  // relation row (Leaf/KBranch) or coordinate (Bisect)
    std::vector<std::pair<Int, std::unique_ptr<CertNode>>> k_children;
    std::unique_ptr<CertNode> low, high;
};

struct EmptinessCertificate {
    IntMat relations;
    Rat eps;
    std::unique_ptr<CertNode> root;
};

struct ProveStats {
    std::uint64_t nodes = 0;
};

struct EmptyResult {
    EmptinessCertificate cert;
    ProveStats stats;
};
struct NonemptyResult {
    std::vector<Rat> witness;  // in [eps, 1-eps]^n, all relation sums integral
    Rat value;                 // min_j dist_to_int(w_j)
    ProveStats stats;
};
struct UnknownResult {
    ProveStats stats;
    std::string reason;
};
using ProveResult = std::variant<EmptyResult, NonemptyResult, UnknownResult>;

// Decides S_rel intersect [eps, 1-eps]^n = empty for the subgroup cut out by
// the given relation rows. Accepts partial relation sets; emptiness for a
// sub-lattice implies emptiness for the full one.
ProveResult prove_empty(const IntMat& relations, const Rat& eps,
                        std::uint64_t node_budget = 1'000'000);

// Independent replay with interval arithmetic and integer-range checks only.
bool check_certificate(const EmptinessCertificate& cert, const IntMat& relations, const Rat& eps);

std::string certificate_to_json(const EmptinessCertificate& cert);
EmptinessCertificate certificate_from_json(std::string_view text);

// ---------- enclosures and verdicts ----------

struct Enclosure {
    Rat lo, hi;  // 0 <= lo <= epsilon* <= hi <= 1/2
};

Enclosure covering_radius_enclosure(const Configuration& cfg, const Rat& tol,
                                    std::uint64_t node_budget = 1'000'000);

struct CoverVerdict {
    enum class Kind { CoversCertified, UncoveredWitness, Unknown } kind;
    std::optional<Rat> exact_radius;                  // set on the d <= 2 path
    std::optional<EmptinessCertificate> certificate;  // set when the prover ran
    std::vector<Rat> witness_chart;                   // chart coords of an uncovered point
    std::optional<Rat> witness_value;                 // its exact min distance
    std::string note;
    ProveStats stats;
};

// Covering holds iff eps >= epsilon*; decided exactly for d <= 2 and by the
// prover at the given eps otherwise. Requires 0 < eps < 1/2.
CoverVerdict is_covering(const Configuration& cfg, const Rat& eps,
                         std::uint64_t node_budget = 1'000'000);

}  // namespace pyjama
