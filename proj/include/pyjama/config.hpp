#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pyjama/quad.hpp"

namespace pyjama {

// Exact strip direction. Directions are identified mod pi, so the stored
// form has sin > 0, or sin = 0 and cos = 1; cos^2 + sin^2 = 1 structurally.
struct UnitVector {
    QuadElem cos, sin;
    friend bool operator==(const UnitVector&, const UnitVector&) = default;
};

// Canonicalizes the sign and checks exact unit norm.
UnitVector make_unit_vector(const QuadElem& c, const QuadElem& s);

// a rotated by b (complex product); result is canonicalized.
UnitVector rotate_vector(const UnitVector& a, const UnitVector& b);

// Inverse rotation of a unit vector.
inline UnitVector conjugate(const UnitVector& u) { return {u.cos, -u.sin}; }

struct Configuration {
    std::string label;
    std::vector<UnitVector> vectors;  // distinct, canonical, nonempty
    int size() const { return static_cast<int>(vectors.size()); }
};

// Canonicalizes every vector, drops duplicates, rejects empty sets.
Configuration make_configuration(std::string label, std::vector<std::pair<QuadElem, QuadElem>> raw);

Configuration build_cube_roots();
Configuration build_section3();

struct PythagoreanOptions {
    bool include_reflected = true;  // (b/c, a/c) alongside (a/c, b/c)
    bool include_negated = true;    // (-a/c, b/c) alongside (a/c, b/c)
};
Configuration build_pythagorean(const Int& max_hypotenuse, PythagoreanOptions opts = {});

// Primitive triples (a, b, c) with a odd, b even, c <= max; sorted by (c, a).
struct Triple {
    Int a, b, c;
};
std::vector<Triple> primitive_triples(const Int& max_hypotenuse);

Configuration rotate(const Configuration& cfg, const UnitVector& r);

// JSON text; schema documented in README. Accepts builder shorthand objects.
Configuration parse_config(std::string_view text);
std::string serialize_config(const Configuration& cfg);

}  // namespace pyjama
