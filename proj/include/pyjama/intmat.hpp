#pragma once

#include <optional>
#include <vector>

#include "pyjama/rat.hpp"

namespace pyjama {

// Dense arbitrary-precision integer matrix, row-major.
class IntMat {
  public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, Int(0)) {}
    static IntMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    IntMat transposed() const;
    IntMat operator*(const IntMat& o) const;
    std::vector<Int> row(int i) const;

    friend bool operator==(const IntMat&, const IntMat&) = default;

  private:
    int rows_, cols_;
    std::vector<Int> a_;
};

using RatMat = std::vector<std::vector<Rat>>;

// Smith normal form U * G * V = D with U, V unimodular and the diagonal
// divisibility chain d1 | d2 | ... All entries exact.
struct SnfResult {
    IntMat D, U, V;
    std::vector<Int> invariant_factors;  // nonzero diagonal entries
    int rank() const { return static_cast<int>(invariant_factors.size()); }
};

SnfResult snf(const IntMat& G);

// Basis (rows) of the saturated lattice {m in Z^n : C * m = 0} for a rational
// matrix C with n columns. Row count equals n - rank(C).
IntMat int_kernel(const RatMat& C, int n);

// True iff v is an integer combination of the basis rows (via row HNF).
bool lattice_contains(const IntMat& basis, const std::vector<Int>& v);

// Row-style Hermite normal form: returns H with the same row lattice as A,
// pivots positive, entries above pivots reduced, zero rows dropped.
IntMat row_hnf(const IntMat& A);

// Determinant (Bareiss, fraction-free).
Int determinant(const IntMat& A);

// Exact inverse of a unimodular matrix (|det| = 1).
IntMat inverse_unimodular(const IntMat& V);

// Unimodular W (2x2) Lagrange-reducing the Gram form of an n x 2 matrix B,
// so the rows of B * W are short.
IntMat gauss_reduce_columns(const IntMat& B);

// Solve A x = b over the rationals for square nonsingular A.
std::optional<std::vector<Rat>> solve_rational(const RatMat& A, const std::vector<Rat>& b);

// Rank over Q by Gaussian elimination.
int rational_rank(RatMat A);

}  // namespace pyjama
