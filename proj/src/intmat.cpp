#include "pyjama/intmat.hpp"

#include <algorithm>

#include "pyjama/errors.hpp"

namespace pyjama {

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::transposed() const {
    IntMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape");
    IntMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

std::vector<Int> IntMat::row(int i) const {
    std::vector<Int> r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

namespace {

void swap_rows(IntMat& m, int a, int b) {
    if (a == b) return;
    for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}
void swap_cols(IntMat& m, int a, int b) {
    if (a == b) return;
    for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}
// row[a] += c * row[b]
void add_row(IntMat& m, int a, int b, const Int& c) {
    if (c == 0) return;
    for (int j = 0; j < m.cols(); ++j) m.at(a, j) += c * m.at(b, j);
}
void add_col(IntMat& m, int a, int b, const Int& c) {
    if (c == 0) return;
    for (int i = 0; i < m.rows(); ++i) m.at(i, a) += c * m.at(i, b);
}
void negate_row(IntMat& m, int a) {
    for (int j = 0; j < m.cols(); ++j) m.at(a, j) = -m.at(a, j);
}
void negate_col(IntMat& m, int a) {
    for (int i = 0; i < m.rows(); ++i) m.at(i, a) = -m.at(i, a);
}

}  // namespace

SnfResult snf(const IntMat& G) {
    IntMat D = G;
    IntMat U = IntMat::identity(G.rows());
    IntMat V = IntMat::identity(G.cols());
    int n = std::min(G.rows(), G.cols());

    for (int t = 0; t < n; ++t) {
        // Find a nonzero pivot in the trailing submatrix.
        int pi = -1, pj = -1;
        for (int i = t; i < D.rows() && pi < 0; ++i)
            for (int j = t; j < D.cols(); ++j)
                if (D.at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        swap_rows(D, t, pi);
        swap_rows(U, t, pi);
        swap_cols(D, t, pj);
        swap_cols(V, t, pj);

        for (;;) {
            // Move the absolutely smallest nonzero of the submatrix to (t, t).
            int mi = t, mj = t;
            for (int i = t; i < D.rows(); ++i)
                for (int j = t; j < D.cols(); ++j)
                    if (D.at(i, j) != 0 &&
                        (D.at(mi, mj) == 0 || abs(D.at(i, j)) < abs(D.at(mi, mj)))) {
                        mi = i;
                        mj = j;
                    }
            swap_rows(D, t, mi);
            swap_rows(U, t, mi);
            swap_cols(D, t, mj);
            swap_cols(V, t, mj);

            bool clean = true;
            for (int i = t + 1; i < D.rows(); ++i) {
                if (D.at(i, t) == 0) continue;
                Int q = floor_div(D.at(i, t), D.at(t, t));
                add_row(D, i, t, -q);
                add_row(U, i, t, -q);
                if (D.at(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < D.cols(); ++j) {
                if (D.at(t, j) == 0) continue;
                Int q = floor_div(D.at(t, j), D.at(t, t));
                add_col(D, j, t, -q);
                add_col(V, j, t, -q);
                if (D.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Enforce divisibility of the rest of the submatrix by the pivot.
            bool fixed = false;
            for (int i = t + 1; i < D.rows() && !fixed; ++i)
                for (int j = t + 1; j < D.cols() && !fixed; ++j)
                    if (D.at(i, j) % D.at(t, t) != 0) {
                        add_row(D, t, i, Int(1));
                        add_row(U, t, i, Int(1));
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (D.at(t, t) < 0) {
            negate_row(D, t);
            negate_row(U, t);
        }
    }

    SnfResult r{std::move(D), std::move(U), std::move(V), {}};
    for (int t = 0; t < n; ++t) {
        if (r.D.at(t, t) == 0) break;
        r.invariant_factors.push_back(r.D.at(t, t));
    }
    return r;
}

IntMat int_kernel(const RatMat& C, int n) {
    for (const auto& row : C)
        if (static_cast<int>(row.size()) != n) throw DimensionMismatch("int_kernel row length");

    // Clear denominators row by row; the integer matrix has the same kernel,
    // and the kernel of an integer matrix is saturated by construction.
    IntMat A(static_cast<int>(C.size()), n);
    for (int i = 0; i < A.rows(); ++i) {
        Int l = 1;
        for (const Rat& x : C[i]) l = boost::multiprecision::lcm(l, denominator(x));
        for (int j = 0; j < n; ++j) {
            const Rat& x = C[i][j];
            A.at(i, j) = numerator(x) * (l / denominator(x));
        }
    }

    // Column-style elimination A * V -> echelon; trailing columns of V
    // form a basis of the kernel lattice.
    IntMat V = IntMat::identity(n);
    int pivot_col = 0;
    for (int i = 0; i < A.rows() && pivot_col < n; ++i) {
        for (;;) {
            int best = -1;
            for (int j = pivot_col; j < n; ++j)
                if (A.at(i, j) != 0 && (best < 0 || abs(A.at(i, j)) < abs(A.at(i, best))))
                    best = j;
            if (best < 0) break;
            bool reduced_all = true;
            for (int j = pivot_col; j < n; ++j) {
                if (j == best || A.at(i, j) == 0) continue;
                Int q = floor_div(A.at(i, j), A.at(i, best));
                add_col(A, j, best, -q);
                add_col(V, j, best, -q);
                if (A.at(i, j) != 0) reduced_all = false;
            }
            if (reduced_all) {
                swap_cols(A, pivot_col, best);
                swap_cols(V, pivot_col, best);
                if (A.at(i, pivot_col) < 0) {
                    negate_col(A, pivot_col);
                    negate_col(V, pivot_col);
                }
                ++pivot_col;
                break;
            }
        }
    }

    int kernel_dim = n - pivot_col;
    IntMat basis(kernel_dim, n);
    for (int k = 0; k < kernel_dim; ++k)
        for (int j = 0; j < n; ++j) basis.at(k, j) = V.at(j, pivot_col + k);
    return basis;
}

IntMat row_hnf(const IntMat& A) {
    IntMat H = A;
    int r = 0;
    for (int c = 0; c < H.cols() && r < H.rows(); ++c) {
        for (;;) {
            int best = -1;
            for (int i = r; i < H.rows(); ++i)
                if (H.at(i, c) != 0 && (best < 0 || abs(H.at(i, c)) < abs(H.at(best, c))))
                    best = i;
            if (best < 0) break;
            bool reduced_all = true;
            for (int i = r; i < H.rows(); ++i) {
                if (i == best || H.at(i, c) == 0) continue;
                Int q = floor_div(H.at(i, c), H.at(best, c));
                add_row(H, i, best, -q);
                if (H.at(i, c) != 0) reduced_all = false;
            }
            if (reduced_all) {
                swap_rows(H, r, best);
                if (H.at(r, c) < 0) negate_row(H, r);
                // Reduce entries above the pivot.
                for (int i = 0; i < r; ++i) {
                    Int q = floor_div(H.at(i, c), H.at(r, c));
                    add_row(H, i, r, -q);
                }
                ++r;
                break;
            }
        }
    }
    IntMat out(r, H.cols());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < H.cols(); ++j) out.at(i, j) = H.at(i, j);
    return out;
}

bool lattice_contains(const IntMat& basis, const std::vector<Int>& v) {
    if (static_cast<int>(v.size()) != basis.cols())
        throw DimensionMismatch("lattice_contains vector length");
    IntMat H = row_hnf(basis);
    std::vector<Int> w = v;
    int row = 0;
    for (int c = 0; c < H.cols(); ++c) {
        if (row < H.rows() && H.at(row, c) != 0) {
            if (w[c] % H.at(row, c) != 0) return false;
            Int q = w[c] / H.at(row, c);
            for (int j = c; j < H.cols(); ++j) w[j] -= q * H.at(row, j);
            ++row;
        } else if (w[c] != 0) {
            return false;
        }
    }
    return std::all_of(w.begin(), w.end(), [](const Int& x) { return x == 0; });
}

Int determinant(const IntMat& A) {
    if (A.rows() != A.cols()) throw DimensionMismatch("determinant of non-square matrix");
    int n = A.rows();
    if (n == 0) return Int(1);
    IntMat m = A;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return Int(0);
            swap_rows(m, k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

IntMat inverse_unimodular(const IntMat& V) {
    if (V.rows() != V.cols()) throw DimensionMismatch("inverse of non-square matrix");
    int n = V.rows();
    RatMat A(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[i][j] = Rat(V.at(i, j));
    IntMat inv(n, n);
    for (int col = 0; col < n; ++col) {
        std::vector<Rat> e(n, Rat(0));
        e[col] = 1;
        auto x = solve_rational(A, e);
        if (!x) throw std::domain_error("matrix is singular");
        for (int i = 0; i < n; ++i) {
            if (denominator((*x)[i]) != 1) throw std::domain_error("matrix is not unimodular");
            inv.at(i, col) = numerator((*x)[i]);
        }
    }
    return inv;
}

IntMat gauss_reduce_columns(const IntMat& B) {
    if (B.cols() != 2) throw DimensionMismatch("gauss_reduce_columns needs 2 columns");
    // Gram form of the columns: g00 = |c0|^2, g01 = <c0, c1>, g11 = |c1|^2.
    Int g00 = 0, g01 = 0, g11 = 0;
    for (int i = 0; i < B.rows(); ++i) {
        g00 += B.at(i, 0) * B.at(i, 0);
        g01 += B.at(i, 0) * B.at(i, 1);
        g11 += B.at(i, 1) * B.at(i, 1);
    }
    IntMat W = IntMat::identity(2);
    for (int guard = 0; guard < 64; ++guard) {
        if (g00 > g11) {
            std::swap(g00, g11);
            swap_cols(W, 0, 1);
        }
        // c1 -= t * c0 with t = round(g01 / g00)
        Int t = floor_div(2 * g01 + g00, 2 * g00);
        if (t == 0) break;
        Int new_g01 = g01 - t * g00;
        g11 = g11 - 2 * t * g01 + t * t * g00;
        g01 = new_g01;
        add_col(W, 1, 0, -t);
    }
    return W;
}

std::optional<std::vector<Rat>> solve_rational(const RatMat& A, const std::vector<Rat>& b) {
    int n = static_cast<int>(A.size());
    RatMat m = A;
    std::vector<Rat> rhs = b;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;

    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (m[i][k] != 0) {
                p = i;
                break;
            }
        if (p < 0) return std::nullopt;
        std::swap(m[k], m[p]);
        std::swap(rhs[k], rhs[p]);
        for (int i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Rat f = m[i][k] / m[k][k];
            for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            rhs[i] -= f * rhs[k];
        }
    }
    std::vector<Rat> x(n);
    for (int i = n - 1; i >= 0; --i) {
        Rat s = rhs[i];
        for (int j = i + 1; j < n; ++j) s -= m[i][j] * x[j];
        x[i] = s / m[i][i];
    }
    return x;
}

int rational_rank(RatMat A) {
    int rank = 0;
    int rows = static_cast<int>(A.size());
    if (rows == 0) return 0;
    int cols = static_cast<int>(A[0].size());
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = -1;
        for (int i = rank; i < rows; ++i)
            if (A[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(A[rank], A[p]);
        for (int i = rank + 1; i < rows; ++i) {
            if (A[i][c] == 0) continue;
            Rat f = A[i][c] / A[rank][c];
            for (int j = c; j < cols; ++j) A[i][j] -= f * A[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace pyjama
