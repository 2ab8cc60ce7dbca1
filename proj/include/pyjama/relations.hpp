#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pyjama/config.hpp"
#include "pyjama/intmat.hpp"

namespace pyjama {

// M = {m in Z^n : sum_j m_j u_j = 0}, stored as a saturated basis (rows).
struct RelationLattice {
    IntMat basis;  // rank x n
    int rank = 0;
    int dim_d = 0;  // n - rank = dim of the Q-span of the directions
};

RelationLattice relation_lattice(const Configuration& cfg);

// S = {B z mod 1 : z in T^d} with B the last d columns of the SNF transform V.
// When some d rows of B form a unimodular block, B is renormalized so that
// block is the identity and `chart` lists those coordinate indices (the
// projection of S onto them is then a bijection). Some configurations admit
// no such block; chart is empty then and z itself is the working chart.
struct SubgroupParam {
    IntMat B;  // n x d
    IntMat V;  // n x n unimodular, x = V w
    std::optional<std::vector<int>> chart;
    int n() const { return B.rows(); }
    int d() const { return B.cols(); }
};

SubgroupParam subgroup_param(const RelationLattice& rl);

// d = 2 for n >= 2; single-vector configurations report non-periodic.
bool is_periodic(const Configuration& cfg);

// Basis of the full period lattice {v : <u_j, v> in Z for all j} when d = 2.
struct PeriodBasis {
    std::array<QuadElem, 2> v0, v1;  // (x, y) coordinates
};
std::optional<PeriodBasis> period_lattice(const Configuration& cfg);

// Per-vector data after rotating the first vector to (1, 0):
// (cos, sin) = (m/n, k*sqrt(D)/n) with m^2 + D k^2 = n^2 and gcd(m, k, n) = 1.
struct QuadTriple {
    Int m, k, n;
};
struct QuadClass {
    Int D;  // squarefree; 1 for the all-rational (Pythagorean) case
    std::vector<QuadTriple> triples;
    Int Mprod;  // product of the n_j
    UnitVector rotation;  // the canonicalizing rotation that was applied
};

// nullopt when the rotated configuration is not of quadratic type.
std::optional<QuadClass> classify_quadratic(const Configuration& cfg);

}  // namespace pyjama
