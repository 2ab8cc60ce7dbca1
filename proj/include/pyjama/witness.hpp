#pragma once

#include <vector>

#include "pyjama/config.hpp"
#include "pyjama/relations.hpp"

namespace pyjama {

// Explicit uncovered point for a periodic quadratic configuration, in the
// configuration's own frame. The guarantee: achieved >= bound, with
// bound = 1/2 for D = 1 and even D, and (p-1)/(2p) >= 1/3 for odd primes p.
struct PeriodicWitness {
    enum class Case { D1, EvenD, OddPrime } kase;
    Int prime = 0;  // smallest prime of D in the OddPrime case
    QuadElem x, y;
    Rat bound, achieved;
    std::vector<Rat> inner_products;  // <u_j, (x, y)>, exact
    QuadClass qc;
};

// Throws NotPeriodicQuadratic when classify_quadratic fails.
PeriodicWitness periodic_witness(const Configuration& cfg);

// min_j dist_to_int(<u_j, point>), computed exactly.
// Throws IrrationalInnerProduct when any inner product is irrational.
Rat verify_point(const Configuration& cfg, const QuadElem& x, const QuadElem& y);

}  // namespace pyjama
