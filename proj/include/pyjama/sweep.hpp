#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pyjama/config.hpp"
#include "pyjama/geometry.hpp"

namespace pyjama {

struct SweepRecord {
    Int N;  // hypotenuse bound of the row
    int vector_count = 0;
    int d = 0;
    Rat radius;                       // exact covering radius
    std::vector<Rat> radius_witness;  // chart point attaining it
    std::optional<Rat> density_bound;
    std::optional<RatPoint2> density_center;
    std::optional<Rat> density_clearance;
    std::string note;
    std::uint64_t work_units = 0;
    double seconds = 0;  // wall time; not serialized

    friend bool operator==(const SweepRecord& a, const SweepRecord& b) {
        return a.N == b.N && a.vector_count == b.vector_count && a.d == b.d &&
               a.radius == b.radius && a.radius_witness == b.radius_witness &&
               a.density_bound == b.density_bound && a.density_center == b.density_center &&
               a.density_clearance == b.density_clearance && a.note == b.note &&
               a.work_units == b.work_units;
    }
};

// One row per achievable hypotenuse bound <= n_max (plus the axes-only
// baseline); rows ordered by N. Per-row failures land in the row's note.
std::vector<SweepRecord> sweep_pythagorean(const Int& n_max, const Rat& tol,
                                           std::uint64_t row_budget, Exec exec = Exec::Parallel,
                                           PythagoreanOptions opts = {});

// Deterministic row line (no timing fields).
std::string sweep_record_to_json(const SweepRecord& rec);
SweepRecord sweep_record_from_json(std::string_view line);
std::string sweep_record_csv_header();
std::string sweep_record_to_csv(const SweepRecord& rec);

}  // namespace pyjama
