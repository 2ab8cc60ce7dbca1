#pragma once

#include <string>
#include <vector>

#include "pyjama/geometry.hpp"
#include "pyjama/relations.hpp"

namespace pyjama {

struct SvgLayer {
    const PolySet* set;
    std::string fill;
};

// Unit-square picture with float-approximated coordinates; verdicts never
// depend on it. The caption embeds an FNV-1a hash of the exact vertex data.
std::string render_svg(const std::vector<SvgLayer>& layers, const std::string& caption);

// Strips of half-width eps for every direction, drawn over the fundamental
// parallelogram of the period lattice. Purely illustrative (floats).
std::string render_plane_strips(const Configuration& cfg, const PeriodBasis& pb, const Rat& eps);

void write_file(const std::string& path, const std::string& content);

}  // namespace pyjama
