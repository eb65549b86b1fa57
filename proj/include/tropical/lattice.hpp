#pragma once

// Exact linear algebra over Z and Q: Smith normal form, kernels, lattice
// indices, saturations and quotient-lattice coordinates.

#include "tropical/number.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace tropical {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// Matrix whose rows are the given vectors; `cols` is needed when `rows` is empty.
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require_same_size(rows[i].size(), cols, "IntMatrix::from_rows");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVector row(std::size_t i) const {
        return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    IntVector col(std::size_t j) const {
        IntVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    IntVector apply(const IntVector& x) const {
        require_same_size(x.size(), cols_, "IntMatrix::apply");
        IntVector y(rows_, Integer(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        require_same_size(a.cols_, b.rows_, "IntMatrix product");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += factor * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& factor) {
        if (factor == 0) return;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
    }
    /// col[dst] += factor * col[src]
    void add_col(std::size_t dst, std::size_t src, const Integer& factor) {
        if (factor == 0) return;
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// U * A * V = S with U, V unimodular and S diagonal, d_1 | d_2 | ... .
/// V_inv is carried along so quotient lattices can be lifted back.
struct SnfDecomposition {
    IntMatrix U;
    IntMatrix S;
    IntMatrix V;
    IntMatrix V_inv;
    std::size_t rank = 0;

    std::vector<Integer> invariants() const {
        std::vector<Integer> d;
        for (std::size_t i = 0; i < rank; ++i) d.push_back(S(i, i));
        return d;
    }
};

/// Smith normal form by elementary row/column operations, always pivoting on
/// the entry of least absolute value in the active block.
inline SnfDecomposition smith_normal_form(const IntMatrix& A) {
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    SnfDecomposition d{IntMatrix::identity(m), A, IntMatrix::identity(n), IntMatrix::identity(n), 0};
    IntMatrix& S = d.S;

    // col op "col[dst] += f * col[src]" acts on V the same way and on V_inv as
    // "row[src] -= f * row[dst]".
    auto col_op = [&](std::size_t dst, std::size_t src, const Integer& f) {
        S.add_col(dst, src, f);
        d.V.add_col(dst, src, f);
        d.V_inv.add_row(src, dst, Integer(-f));
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        S.swap_cols(a, b);
        d.V.swap_cols(a, b);
        d.V_inv.swap_rows(a, b);
    };
    auto row_op = [&](std::size_t dst, std::size_t src, const Integer& f) {
        S.add_row(dst, src, f);
        d.U.add_row(dst, src, f);
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        S.swap_rows(a, b);
        d.U.swap_rows(a, b);
    };

    const std::size_t steps = std::min(m, n);
    std::size_t t = 0;
    for (; t < steps; ++t) {
        // Move the smallest nonzero entry of the active block to (t, t).
        auto pick_pivot = [&](bool whole_block) -> bool {
            std::size_t bi = m, bj = n;
            Integer best = 0;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (!whole_block && i != t && j != t) continue;
                    if (S(i, j) == 0) continue;
                    Integer a = abs(S(i, j));
                    if (best == 0 || a < best) {
                        best = a;
                        bi = i;
                        bj = j;
                    }
                }
            if (best == 0) return false;
            row_swap(t, bi);
            col_swap(t, bj);
            return true;
        };
        if (!pick_pivot(true)) break;

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (S(i, t) == 0) continue;
                Integer q = S(i, t) / S(t, t);
                row_op(i, t, Integer(-q));
                if (S(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (S(t, j) == 0) continue;
                Integer q = S(t, j) / S(t, t);
                col_op(j, t, Integer(-q));
                if (S(t, j) != 0) dirty = true;
            }
            if (dirty) {
                pick_pivot(false);
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (S(i, j) % S(t, t) != 0) {
                        row_op(t, i, Integer(1));
                        fixed = true;
                        break;
                    }
            if (!fixed) break;
        }
        if (S(t, t) < 0) {
            S.negate_row(t);
            d.U.negate_row(t);
        }
    }
    d.rank = t;
    return d;
}

/// Rank over Q of a family of integer vectors of length `dim`.
inline std::size_t rank_of(const std::vector<IntVector>& vectors, std::size_t dim) {
    if (vectors.empty()) return 0;
    // Fraction-free elimination with content reduction.
    std::vector<IntVector> rows = vectors;
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            Integer a = rows[r][c], b = rows[i][c];
            for (std::size_t j = c; j < dim; ++j) rows[i][j] = a * rows[i][j] - b * rows[r][j];
            Integer g = content(rows[i]);
            if (g > 1)
                for (auto& x : rows[i]) x /= g;
        }
        ++r;
    }
    return r;
}

/// Lattice basis of ker(A) ∩ Z^cols. The basis is saturated; each vector is
/// sign-normalized (first nonzero entry positive).
inline std::vector<IntVector> integer_kernel(const IntMatrix& A) {
    const std::size_t n = A.cols();
    if (A.rows() == 0) {
        std::vector<IntVector> basis;
        for (std::size_t i = 0; i < n; ++i) basis.push_back(unit_vector(n, i));
        return basis;
    }
    auto d = smith_normal_form(A);
    std::vector<IntVector> basis;
    for (std::size_t j = d.rank; j < n; ++j) basis.push_back(sign_normalized(d.V.col(j)));
    return basis;
}

/// Index [Z^n : <generators>], or nullopt when the generators do not span R^n.
inline std::optional<Integer> lattice_index(const std::vector<IntVector>& generators, std::size_t ambient_dim) {
    for (const auto& g : generators) require_same_size(g.size(), ambient_dim, "lattice_index");
    if (ambient_dim == 0) return Integer(1);
    if (generators.empty()) return std::nullopt;
    auto d = smith_normal_form(IntMatrix::from_rows(generators, ambient_dim));
    if (d.rank < ambient_dim) return std::nullopt;
    Integer idx = 1;
    for (std::size_t i = 0; i < d.rank; ++i) idx *= d.S(i, i);
    return idx;
}

/// Index of the lattice generated by `generators` inside its saturation
/// (span_R(generators) ∩ Z^n).
inline Integer saturation_index(const std::vector<IntVector>& generators, std::size_t ambient_dim) {
    if (generators.empty()) return 1;
    auto d = smith_normal_form(IntMatrix::from_rows(generators, ambient_dim));
    Integer idx = 1;
    for (std::size_t i = 0; i < d.rank; ++i) idx *= d.S(i, i);
    return idx;
}

/// Integer solution of A x = b (any one, deterministic), or nullopt.
inline std::optional<IntVector> solve_integer(const IntMatrix& A, const IntVector& b) {
    require_same_size(b.size(), A.rows(), "solve_integer");
    const std::size_t n = A.cols();
    if (A.rows() == 0) return zero_vector(n);
    auto d = smith_normal_form(A);
    IntVector ub = d.U.apply(b);
    IntVector y(n, Integer(0));
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (i < d.rank) {
            if (ub[i] % d.S(i, i) != 0) return std::nullopt;
            y[i] = ub[i] / d.S(i, i);
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return d.V.apply(y);
}

/// Coordinates on N / sat(L) for a sublattice L given by generators.
///
/// With U G V = S, the rows of V^{-1} form a basis of Z^n whose first r rows
/// span the saturation of L. A point x has coordinates x V in that basis; the
/// last n - r of them coordinatize the quotient.
class QuotientMap {
public:
    QuotientMap() = default;

    QuotientMap(const std::vector<IntVector>& generators, std::size_t ambient_dim) : n_(ambient_dim) {
        if (generators.empty()) {
            V_ = IntMatrix::identity(n_);
            V_inv_ = IntMatrix::identity(n_);
            r_ = 0;
            return;
        }
        auto d = smith_normal_form(IntMatrix::from_rows(generators, ambient_dim));
        V_ = std::move(d.V);
        V_inv_ = std::move(d.V_inv);
        r_ = d.rank;
    }

    std::size_t ambient_dim() const { return n_; }
    std::size_t sublattice_rank() const { return r_; }
    std::size_t quotient_dim() const { return n_ - r_; }

    /// Lattice basis of the saturation sat(L) = span_R(L) ∩ Z^n.
    std::vector<IntVector> saturation_basis() const {
        std::vector<IntVector> b;
        for (std::size_t i = 0; i < r_; ++i) b.push_back(V_inv_.row(i));
        return b;
    }

    /// Image of a lattice vector in Z^{n-r}.
    IntVector project(const IntVector& x) const {
        require_same_size(x.size(), n_, "QuotientMap::project");
        IntVector q(n_ - r_, Integer(0));
        for (std::size_t j = r_; j < n_; ++j) {
            Integer s = 0;
            for (std::size_t i = 0; i < n_; ++i) s += x[i] * V_(i, j);
            q[j - r_] = s;
        }
        return q;
    }

    /// Canonical lift of quotient coordinates back to Z^n.
    IntVector lift(const IntVector& q) const {
        require_same_size(q.size(), n_ - r_, "QuotientMap::lift");
        IntVector x(n_, Integer(0));
        for (std::size_t k = 0; k < q.size(); ++k) {
            if (q[k] == 0) continue;
            for (std::size_t j = 0; j < n_; ++j) x[j] += q[k] * V_inv_(r_ + k, j);
        }
        return x;
    }

    bool in_saturation(const IntVector& x) const { return is_zero(project(x)); }

private:
    std::size_t n_ = 0;
    std::size_t r_ = 0;
    IntMatrix V_;
    IntMatrix V_inv_;
};

// --- rational helpers --------------------------------------------------------

/// Reduced row echelon basis of span_Q(vectors), each row scaled to a primitive
/// integer vector. Canonical for the subspace.
inline std::vector<IntVector> canonical_subspace_basis(const std::vector<IntVector>& vectors, std::size_t dim) {
    std::vector<RatVector> rows;
    for (const auto& v : vectors) rows.push_back(to_rational(v));
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        Rational inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c];
            for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < r; ++i) out.push_back(primitive_direction(rows[i]));
    return out;
}

/// Solve the square nonsingular rational system M x = b.
inline RatVector solve_rational(std::vector<RatVector> M, RatVector b) {
    const std::size_t n = M.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && M[p][c] == 0) ++p;
        if (p == n) throw Error(ErrorCode::InvalidArgument, "solve_rational: singular system");
        std::swap(M[p], M[c]);
        std::swap(b[p], b[c]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || M[i][c] == 0) continue;
            Rational f = M[i][c] / M[c][c];
            for (std::size_t j = c; j < n; ++j) M[i][j] -= f * M[c][j];
            b[i] -= f * b[c];
        }
    }
    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / M[i][i];
    return x;
}

/// Orthogonal projection of v onto the complement of span(basis); `basis`
/// must be linearly independent.
inline RatVector project_out(const RatVector& v, const std::vector<IntVector>& basis) {
    if (basis.empty()) return v;
    const std::size_t k = basis.size();
    std::vector<RatVector> gram(k, RatVector(k));
    RatVector rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = Rational(dot(basis[i], basis[j]));
        rhs[i] = dot(basis[i], v);
    }
    RatVector c = solve_rational(gram, rhs);
    RatVector out = v;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[j] -= c[i] * Rational(basis[i][j]);
    return out;
}

} // namespace tropical
