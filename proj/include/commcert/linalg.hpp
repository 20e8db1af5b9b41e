#pragma once

#include <optional>
#include <vector>

#include "commcert/errors.hpp"
#include "commcert/field.hpp"

namespace commcert {

using Vec = std::vector<Scalar>;

/// Dense matrix over one exact field. Row-major.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(int rows, int cols, FieldDescriptor f)
        : rows_(rows), cols_(cols), field_(f),
          e_(static_cast<std::size_t>(rows) * cols, Scalar::zero(f)) {
        if (rows <= 0 || cols <= 0) throw DimensionError("matrix dimensions must be positive");
    }

    static ExactMatrix identity(int n, FieldDescriptor f) {
        ExactMatrix m(n, n, f);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldDescriptor& field() const { return field_; }

    Scalar& at(int r, int c) { return e_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Scalar& at(int r, int c) const { return e_[static_cast<std::size_t>(r) * cols_ + c]; }

    bool operator==(const ExactMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && e_ == o.e_;
    }

    bool is_zero() const {
        for (const auto& s : e_)
            if (!s.is_zero()) return false;
        return true;
    }

    ExactMatrix operator+(const ExactMatrix& o) const {
        require_same_shape(o);
        ExactMatrix r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
        return r;
    }

    ExactMatrix operator-(const ExactMatrix& o) const {
        require_same_shape(o);
        ExactMatrix r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
        return r;
    }

    ExactMatrix operator*(const ExactMatrix& o) const {
        if (cols_ != o.rows_) throw DimensionError("matrix product shape mismatch");
        ExactMatrix r(rows_, o.cols_, field_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) += at(i, k) * o.at(k, j);
            }
        return r;
    }

    ExactMatrix scaled(const Scalar& s) const {
        ExactMatrix r = *this;
        for (auto& x : r.e_) x = x * s;
        return r;
    }

    ExactMatrix transpose() const {
        ExactMatrix r(cols_, rows_, field_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    ExactMatrix conjugate_transpose() const {
        ExactMatrix r = transpose();
        for (auto& x : r.e_) x = x.conj();
        return r;
    }

    Vec apply(const Vec& v) const {
        if (static_cast<int>(v.size()) != cols_) throw DimensionError("matrix-vector shape mismatch");
        Vec r(rows_, Scalar::zero(field_));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
        return r;
    }

    Scalar trace() const {
        Scalar t = Scalar::zero(field_);
        for (int i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
        return t;
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    /// Pivots are chosen among the candidate column entries by smallest
    /// bit height, which keeps rational growth in check.
    std::vector<int> rref_in_place() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < cols_ && row < rows_; ++col) {
            int best = -1;
            std::size_t best_h = 0;
            for (int r = row; r < rows_; ++r) {
                if (at(r, col).is_zero()) continue;
                std::size_t h = at(r, col).height_bits();
                if (best < 0 || h < best_h) {
                    best = r;
                    best_h = h;
                }
            }
            if (best < 0) continue;
            if (best != row)
                for (int c = 0; c < cols_; ++c) std::swap(at(row, c), at(best, c));
            Scalar inv = at(row, col).inverse();
            for (int c = col; c < cols_; ++c) at(row, c) = at(row, c) * inv;
            for (int r = 0; r < rows_; ++r) {
                if (r == row || at(r, col).is_zero()) continue;
                Scalar f = at(r, col);
                for (int c = col; c < cols_; ++c) at(r, c) = at(r, c) - f * at(row, c);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const {
        ExactMatrix m = *this;
        return static_cast<int>(m.rref_in_place().size());
    }

    Scalar determinant() const {
        if (rows_ != cols_) throw DimensionError("determinant of non-square matrix");
        ExactMatrix m = *this;
        Scalar det = Scalar::one(field_);
        int row = 0;
        for (int col = 0; col < cols_ && row < rows_; ++col) {
            int best = -1;
            std::size_t best_h = 0;
            for (int r = row; r < rows_; ++r) {
                if (m.at(r, col).is_zero()) continue;
                std::size_t h = m.at(r, col).height_bits();
                if (best < 0 || h < best_h) {
                    best = r;
                    best_h = h;
                }
            }
            if (best < 0) return Scalar::zero(field_);
            if (best != row) {
                for (int c = 0; c < cols_; ++c) std::swap(m.at(row, c), m.at(best, c));
                det = -det;
            }
            det = det * m.at(row, col);
            Scalar inv = m.at(row, col).inverse();
            for (int r = row + 1; r < rows_; ++r) {
                if (m.at(r, col).is_zero()) continue;
                Scalar f = m.at(r, col) * inv;
                for (int c = col; c < cols_; ++c) m.at(r, c) = m.at(r, c) - f * m.at(row, c);
            }
            ++row;
        }
        return row == rows_ ? det : Scalar::zero(field_);
    }

    std::optional<ExactMatrix> inverse() const {
        if (rows_ != cols_) throw DimensionError("inverse of non-square matrix");
        ExactMatrix aug(rows_, 2 * cols_, field_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_ + i) = Scalar::one(field_);
        }
        auto piv = aug.rref_in_place();
        if (static_cast<int>(piv.size()) != rows_ || piv.back() >= cols_) return std::nullopt;
        ExactMatrix inv(rows_, cols_, field_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
        return inv;
    }

    /// Adjugate by cofactor expansion: adj(M)·M = det(M)·I, defined for
    /// singular M as well. Intended for the small m used by the factor
    /// searches.
    ExactMatrix adjugate() const {
        if (rows_ != cols_) throw DimensionError("adjugate of non-square matrix");
        int n = rows_;
        ExactMatrix adj(n, n, field_);
        if (n == 1) {
            adj.at(0, 0) = Scalar::one(field_);
            return adj;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                ExactMatrix minor(n - 1, n - 1, field_);
                for (int r = 0, mr = 0; r < n; ++r) {
                    if (r == i) continue;
                    for (int c = 0, mc = 0; c < n; ++c) {
                        if (c == j) continue;
                        minor.at(mr, mc++) = at(r, c);
                    }
                    ++mr;
                }
                Scalar cof = minor.determinant();
                if ((i + j) % 2 == 1) cof = -cof;
                adj.at(j, i) = cof;
            }
        return adj;
    }

private:
    void require_same_shape(const ExactMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_))
            throw DimensionError("matrix shape/field mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    FieldDescriptor field_{};
    std::vector<Scalar> e_;
};

/// A list of linearly independent coordinate vectors of a common ambient
/// dimension.
struct SubspaceBasis {
    int ambient_dim = 0;
    std::vector<Vec> vectors;

    int dim() const { return static_cast<int>(vectors.size()); }
};

inline ExactMatrix rows_to_matrix(const std::vector<Vec>& rows, int ambient, FieldDescriptor f) {
    ExactMatrix m(static_cast<int>(rows.size()), ambient, f);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < ambient; ++j) m.at(i, j) = rows[i][j];
    return m;
}

/// Canonical (RREF) basis of the span of `vectors`; drops dependent input.
inline SubspaceBasis canonical_basis(int ambient, const std::vector<Vec>& vectors, FieldDescriptor f) {
    SubspaceBasis out{ambient, {}};
    if (vectors.empty()) return out;
    ExactMatrix m = rows_to_matrix(vectors, ambient, f);
    auto piv = m.rref_in_place();
    for (std::size_t r = 0; r < piv.size(); ++r) {
        Vec v(ambient, Scalar::zero(f));
        for (int c = 0; c < ambient; ++c) v[c] = m.at(static_cast<int>(r), c);
        out.vectors.push_back(std::move(v));
    }
    return out;
}

/// Basis of the null space of M. Zero matrix yields the full standard
/// basis; invertible M yields the empty basis.
inline SubspaceBasis kernel_basis(const ExactMatrix& M) {
    ExactMatrix m = M;
    auto piv = m.rref_in_place();
    const FieldDescriptor f = M.field();
    SubspaceBasis out{M.cols(), {}};
    std::vector<bool> is_piv(M.cols(), false);
    for (int c : piv) is_piv[c] = true;
    for (int free = 0; free < M.cols(); ++free) {
        if (is_piv[free]) continue;
        Vec v(M.cols(), Scalar::zero(f));
        v[free] = Scalar::one(f);
        for (std::size_t r = 0; r < piv.size(); ++r)
            v[piv[r]] = -m.at(static_cast<int>(r), free);
        out.vectors.push_back(std::move(v));
    }
    return out;
}

/// Exact solution of M x = b, or nothing when b is outside the column
/// space. Free variables are set to zero.
inline std::optional<Vec> solve_linear(const ExactMatrix& M, const Vec& b) {
    if (static_cast<int>(b.size()) != M.rows())
        throw DimensionError("solve_linear: rhs length must equal row count");
    ExactMatrix aug(M.rows(), M.cols() + 1, M.field());
    for (int i = 0; i < M.rows(); ++i) {
        for (int j = 0; j < M.cols(); ++j) aug.at(i, j) = M.at(i, j);
        aug.at(i, M.cols()) = b[i];
    }
    auto piv = aug.rref_in_place();
    if (!piv.empty() && piv.back() == M.cols()) return std::nullopt;
    Vec x(M.cols(), Scalar::zero(M.field()));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(static_cast<int>(r), M.cols());
    return x;
}

/// Span membership test.
inline bool in_span(const SubspaceBasis& U, const Vec& v) {
    if (U.vectors.empty()) {
        for (const auto& s : v)
            if (!s.is_zero()) return false;
        return true;
    }
    const FieldDescriptor f = v.front().field();
    ExactMatrix m(U.ambient_dim, U.dim(), f);
    for (int j = 0; j < U.dim(); ++j)
        for (int i = 0; i < U.ambient_dim; ++i) m.at(i, j) = U.vectors[j][i];
    return solve_linear(m, v).has_value();
}

/// Basis of U ∩ V via the kernel of [U | -V] read off on the U side.
inline SubspaceBasis intersect_subspaces(const SubspaceBasis& U, const SubspaceBasis& V) {
    if (U.ambient_dim != V.ambient_dim)
        throw DimensionError("intersect_subspaces: ambient dimensions differ");
    if (U.vectors.empty() || V.vectors.empty()) return SubspaceBasis{U.ambient_dim, {}};
    const FieldDescriptor f = U.vectors.front().front().field();
    SubspaceBasis Un = canonical_basis(U.ambient_dim, U.vectors, f);
    SubspaceBasis Vn = canonical_basis(V.ambient_dim, V.vectors, f);
    if (Un.vectors.empty() || Vn.vectors.empty()) return SubspaceBasis{U.ambient_dim, {}};

    ExactMatrix m(U.ambient_dim, Un.dim() + Vn.dim(), f);
    for (int j = 0; j < Un.dim(); ++j)
        for (int i = 0; i < U.ambient_dim; ++i) m.at(i, j) = Un.vectors[j][i];
    for (int j = 0; j < Vn.dim(); ++j)
        for (int i = 0; i < U.ambient_dim; ++i) m.at(i, Un.dim() + j) = -Vn.vectors[j][i];

    SubspaceBasis ker = kernel_basis(m);
    std::vector<Vec> result;
    for (const auto& w : ker.vectors) {
        Vec v(U.ambient_dim, Scalar::zero(f));
        for (int j = 0; j < Un.dim(); ++j)
            for (int i = 0; i < U.ambient_dim; ++i) v[i] += w[j] * Un.vectors[j][i];
        result.push_back(std::move(v));
    }
    return canonical_basis(U.ambient_dim, result, f);
}

inline SubspaceBasis column_space(const ExactMatrix& M) {
    std::vector<Vec> cols;
    for (int j = 0; j < M.cols(); ++j) {
        Vec v(M.rows(), Scalar::zero(M.field()));
        bool nz = false;
        for (int i = 0; i < M.rows(); ++i) {
            v[i] = M.at(i, j);
            nz = nz || !v[i].is_zero();
        }
        if (nz) cols.push_back(std::move(v));
    }
    return canonical_basis(M.rows(), cols, M.field());
}

} // namespace commcert
