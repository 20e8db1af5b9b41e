#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "commcert/errors.hpp"
#include "commcert/field.hpp"
#include "commcert/linalg.hpp"
#include "commcert/rng.hpp"

namespace commcert {

enum class AlgebraKind { MatrixOverField, Quaternion, MatrixOverQuaternion };

/// A concrete simple algebra M_m(D) with D the base field or a definite
/// quaternion algebra (i^2 = a, j^2 = b, ij = k = -ji). Over Q the
/// quaternion parameters must be negative integers, which makes the norm
/// form positive definite and hence D a division algebra.
struct AlgebraDescriptor {
    AlgebraKind kind = AlgebraKind::MatrixOverField;
    int m = 1;
    long qa = -1; // i^2
    long qb = -1; // j^2
    FieldDescriptor base_field = FieldDescriptor::Q();

    static AlgebraDescriptor matrix_over_field(int m, FieldDescriptor f = FieldDescriptor::Q()) {
        if (m < 1) throw DomainError("matrix size must be >= 1");
        AlgebraDescriptor d;
        d.kind = AlgebraKind::MatrixOverField;
        d.m = m;
        d.base_field = f;
        return d;
    }

    static AlgebraDescriptor quaternion(long a, long b, FieldDescriptor f = FieldDescriptor::Q()) {
        AlgebraDescriptor d;
        d.kind = AlgebraKind::Quaternion;
        d.m = 1;
        d.qa = a;
        d.qb = b;
        d.base_field = f;
        d.validate_quaternion_params();
        return d;
    }

    static AlgebraDescriptor hamilton() { return quaternion(-1, -1); }

    static AlgebraDescriptor matrix_over_quaternion(int m, long a, long b,
                                                    FieldDescriptor f = FieldDescriptor::Q()) {
        if (m < 1) throw DomainError("matrix size must be >= 1");
        AlgebraDescriptor d;
        d.kind = AlgebraKind::MatrixOverQuaternion;
        d.m = m;
        d.qa = a;
        d.qb = b;
        d.base_field = f;
        d.validate_quaternion_params();
        return d;
    }

    bool quaternionic() const { return kind != AlgebraKind::MatrixOverField; }
    int degree_of_D() const { return quaternionic() ? 2 : 1; }

    int dim() const {
        switch (kind) {
            case AlgebraKind::MatrixOverField: return m * m;
            case AlgebraKind::Quaternion: return 4;
            case AlgebraKind::MatrixOverQuaternion: return 4 * m * m;
        }
        return 0;
    }

    /// The quaternion part D as its own descriptor.
    AlgebraDescriptor quaternion_part() const {
        if (!quaternionic()) throw DomainError("algebra has no quaternion part");
        AlgebraDescriptor d;
        d.kind = AlgebraKind::Quaternion;
        d.m = 1;
        d.qa = qa;
        d.qb = qb;
        d.base_field = base_field;
        return d;
    }

    bool operator==(const AlgebraDescriptor& o) const {
        if (kind != o.kind || m != o.m || !(base_field == o.base_field)) return false;
        if (quaternionic()) return qa == o.qa && qb == o.qb;
        return true;
    }

    std::string name() const {
        switch (kind) {
            case AlgebraKind::MatrixOverField:
                return "M_" + std::to_string(m) + "(" + base_field.name() + ")";
            case AlgebraKind::Quaternion:
                return "(" + std::to_string(qa) + "," + std::to_string(qb) + "/" +
                       base_field.name() + ")";
            case AlgebraKind::MatrixOverQuaternion:
                return "M_" + std::to_string(m) + "((" + std::to_string(qa) + "," +
                       std::to_string(qb) + ")/" + base_field.name() + ")";
        }
        return "?";
    }

private:
    void validate_quaternion_params() const {
        if (base_field.kind == FieldKind::Rationals && (qa >= 0 || qb >= 0))
            throw DomainError("quaternion parameters over Q must be negative integers");
    }
};

/// Coordinate vector with respect to the fixed basis: quaternions
/// (1, i, j, k); matrix units e_rs row-major; matrix-over-quaternion
/// e_rs ⊗ (1, i, j, k), row-major then quaternion.
struct AlgebraElement {
    AlgebraDescriptor alg;
    Vec coords;

    bool is_zero() const {
        for (const auto& s : coords)
            if (!s.is_zero()) return false;
        return true;
    }

    bool operator==(const AlgebraElement& o) const {
        return alg == o.alg && coords == o.coords;
    }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }
};

namespace detail {

inline void require_same(const AlgebraElement& x, const AlgebraElement& y) {
    if (!(x.alg == y.alg))
        throw DomainError("algebra mismatch: " + x.alg.name() + " vs " + y.alg.name());
}

using Quat = std::array<Scalar, 4>;

inline Quat quat_zero(FieldDescriptor f) {
    return {Scalar::zero(f), Scalar::zero(f), Scalar::zero(f), Scalar::zero(f)};
}

/// (x0 + x1 i + x2 j + x3 k)(y0 + y1 i + y2 j + y3 k) with i^2=a, j^2=b,
/// k = ij, k^2 = -ab, ik = aj, ki = -aj, jk = -bi, kj = bi.
inline Quat quat_mul(const Quat& x, const Quat& y, long qa, long qb, FieldDescriptor f) {
    Scalar a = Scalar::from_int(f, qa);
    Scalar b = Scalar::from_int(f, qb);
    Scalar ab = a * b;
    Quat r = quat_zero(f);
    r[0] = x[0] * y[0] + a * (x[1] * y[1]) + b * (x[2] * y[2]) - ab * (x[3] * y[3]);
    r[1] = x[0] * y[1] + x[1] * y[0] - b * (x[2] * y[3]) + b * (x[3] * y[2]);
    r[2] = x[0] * y[2] + x[2] * y[0] + a * (x[1] * y[3]) - a * (x[3] * y[1]);
    r[3] = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1];
    return r;
}

inline Quat quat_conj(const Quat& x) { return {x[0], -x[1], -x[2], -x[3]}; }

/// Reduced norm x0^2 - a x1^2 - b x2^2 + ab x3^2.
inline Scalar quat_norm(const Quat& x, long qa, long qb, FieldDescriptor f) {
    Scalar a = Scalar::from_int(f, qa);
    Scalar b = Scalar::from_int(f, qb);
    return x[0] * x[0] - a * (x[1] * x[1]) - b * (x[2] * x[2]) + (a * b) * (x[3] * x[3]);
}

} // namespace detail

inline AlgebraElement zero_element(const AlgebraDescriptor& alg) {
    return {alg, Vec(static_cast<std::size_t>(alg.dim()), Scalar::zero(alg.base_field))};
}

inline AlgebraElement basis_element(const AlgebraDescriptor& alg, int idx) {
    AlgebraElement x = zero_element(alg);
    x.coords[idx] = Scalar::one(alg.base_field);
    return x;
}

inline AlgebraElement one_element(const AlgebraDescriptor& alg) {
    AlgebraElement x = zero_element(alg);
    switch (alg.kind) {
        case AlgebraKind::MatrixOverField:
            for (int r = 0; r < alg.m; ++r) x.coords[r * alg.m + r] = Scalar::one(alg.base_field);
            break;
        case AlgebraKind::Quaternion:
            x.coords[0] = Scalar::one(alg.base_field);
            break;
        case AlgebraKind::MatrixOverQuaternion:
            for (int r = 0; r < alg.m; ++r)
                x.coords[(r * alg.m + r) * 4] = Scalar::one(alg.base_field);
            break;
    }
    return x;
}

/// Scalar multiple of the identity.
inline AlgebraElement scalar_element(const AlgebraDescriptor& alg, const Scalar& c) {
    AlgebraElement x = one_element(alg);
    for (auto& s : x.coords) s = s * c;
    return x;
}

/// Quaternion element from its four coordinates.
inline AlgebraElement quat_element(const AlgebraDescriptor& alg, const Scalar& w,
                                   const Scalar& xi, const Scalar& yj, const Scalar& zk) {
    if (alg.kind != AlgebraKind::Quaternion) throw DomainError("quat_element: not a quaternion algebra");
    AlgebraElement x = zero_element(alg);
    x.coords[0] = w;
    x.coords[1] = xi;
    x.coords[2] = yj;
    x.coords[3] = zk;
    return x;
}

/// Accessors for the quaternion entry at (r, s) of a matrix-over-quaternion
/// element (or the whole element when m = 1 and the kind is Quaternion).
inline detail::Quat quat_entry(const AlgebraElement& x, int r, int s) {
    const auto& alg = x.alg;
    if (alg.kind == AlgebraKind::Quaternion)
        return {x.coords[0], x.coords[1], x.coords[2], x.coords[3]};
    int base = (r * alg.m + s) * 4;
    return {x.coords[base], x.coords[base + 1], x.coords[base + 2], x.coords[base + 3]};
}

inline void set_quat_entry(AlgebraElement& x, int r, int s, const detail::Quat& q) {
    const auto& alg = x.alg;
    if (alg.kind == AlgebraKind::Quaternion) {
        for (int t = 0; t < 4; ++t) x.coords[t] = q[t];
        return;
    }
    int base = (r * alg.m + s) * 4;
    for (int t = 0; t < 4; ++t) x.coords[base + t] = q[t];
}

inline AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) {
    detail::require_same(x, y);
    AlgebraElement r = x;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += y.coords[i];
    return r;
}

inline AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y) {
    detail::require_same(x, y);
    AlgebraElement r = x;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= y.coords[i];
    return r;
}

inline AlgebraElement neg(const AlgebraElement& x) {
    AlgebraElement r = x;
    for (auto& s : r.coords) s = -s;
    return r;
}

inline AlgebraElement scale(const AlgebraElement& x, const Scalar& c) {
    AlgebraElement r = x;
    for (auto& s : r.coords) s = s * c;
    return r;
}

/// Structure-constant product.
inline AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) {
    detail::require_same(x, y);
    const auto& alg = x.alg;
    const FieldDescriptor f = alg.base_field;
    AlgebraElement r = zero_element(alg);
    switch (alg.kind) {
        case AlgebraKind::MatrixOverField: {
            int m = alg.m;
            for (int i = 0; i < m; ++i)
                for (int k = 0; k < m; ++k) {
                    const Scalar& xik = x.coords[i * m + k];
                    if (xik.is_zero()) continue;
                    for (int j = 0; j < m; ++j)
                        r.coords[i * m + j] += xik * y.coords[k * m + j];
                }
            break;
        }
        case AlgebraKind::Quaternion: {
            detail::Quat q = detail::quat_mul(quat_entry(x, 0, 0), quat_entry(y, 0, 0),
                                              alg.qa, alg.qb, f);
            set_quat_entry(r, 0, 0, q);
            break;
        }
        case AlgebraKind::MatrixOverQuaternion: {
            int m = alg.m;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    detail::Quat acc = detail::quat_zero(f);
                    for (int k = 0; k < m; ++k) {
                        detail::Quat p = detail::quat_mul(quat_entry(x, i, k), quat_entry(y, k, j),
                                                          alg.qa, alg.qb, f);
                        for (int t = 0; t < 4; ++t) acc[t] += p[t];
                    }
                    set_quat_entry(r, i, j, acc);
                }
            break;
        }
    }
    return r;
}

inline AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y) {
    return sub(multiply(x, y), multiply(y, x));
}

/// Reduced trace: ordinary trace for matrices over a field, 2x0 for
/// quaternions, and the sum of 2·Re over the diagonal for quaternionic
/// matrices.
inline Scalar reduced_trace(const AlgebraElement& x) {
    const auto& alg = x.alg;
    Scalar t = Scalar::zero(alg.base_field);
    Scalar two = Scalar::from_int(alg.base_field, 2);
    switch (alg.kind) {
        case AlgebraKind::MatrixOverField:
            for (int r = 0; r < alg.m; ++r) t += x.coords[r * alg.m + r];
            break;
        case AlgebraKind::Quaternion:
            t = two * x.coords[0];
            break;
        case AlgebraKind::MatrixOverQuaternion:
            for (int r = 0; r < alg.m; ++r) t += two * x.coords[(r * alg.m + r) * 4];
            break;
    }
    return t;
}

/// The functional in tau(x) = coeffs · coords(x) form.
struct LinearFunctional {
    AlgebraDescriptor alg;
    Vec coeffs;

    Scalar apply(const AlgebraElement& x) const {
        if (!(x.alg == alg)) throw DomainError("functional/element algebra mismatch");
        Scalar t = Scalar::zero(alg.base_field);
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (!coeffs[i].is_zero()) t += coeffs[i] * x.coords[i];
        return t;
    }
};

inline LinearFunctional reduced_trace_functional(const AlgebraDescriptor& alg) {
    LinearFunctional tau{alg, Vec(static_cast<std::size_t>(alg.dim()), Scalar::zero(alg.base_field))};
    for (int i = 0; i < alg.dim(); ++i)
        tau.coeffs[i] = reduced_trace(basis_element(alg, i));
    return tau;
}

/// Matrix of y -> x·y in algebra coordinates.
inline ExactMatrix left_mult_operator(const AlgebraElement& x) {
    const auto& alg = x.alg;
    int n = alg.dim();
    ExactMatrix L(n, n, alg.base_field);
    for (int j = 0; j < n; ++j) {
        AlgebraElement col = multiply(x, basis_element(alg, j));
        for (int i = 0; i < n; ++i) L.at(i, j) = col.coords[i];
    }
    return L;
}

/// Matrix of y -> [x, y] in algebra coordinates. The kernel always
/// contains F·1.
inline ExactMatrix ad_operator(const AlgebraElement& x) {
    const auto& alg = x.alg;
    int n = alg.dim();
    ExactMatrix A(n, n, alg.base_field);
    for (int j = 0; j < n; ++j) {
        AlgebraElement col = commutator(x, basis_element(alg, j));
        for (int i = 0; i < n; ++i) A.at(i, j) = col.coords[i];
    }
    return A;
}

inline bool is_central(const AlgebraElement& x) { return ad_operator(x).is_zero(); }

inline bool is_field(const AlgebraDescriptor& alg) {
    return alg.kind == AlgebraKind::MatrixOverField && alg.m == 1;
}

/// Exact inverse. Quaternions go through conjugate over norm, matrices
/// over a field through elimination, quaternionic matrices through the
/// left-regular representation L_x y = 1.
inline std::optional<AlgebraElement> inverse(const AlgebraElement& x) {
    const auto& alg = x.alg;
    const FieldDescriptor f = alg.base_field;
    switch (alg.kind) {
        case AlgebraKind::Quaternion: {
            detail::Quat q = quat_entry(x, 0, 0);
            Scalar n = detail::quat_norm(q, alg.qa, alg.qb, f);
            if (n.is_zero()) return std::nullopt;
            Scalar ninv = n.inverse();
            detail::Quat c = detail::quat_conj(q);
            AlgebraElement r = zero_element(alg);
            for (int t = 0; t < 4; ++t) r.coords[t] = c[t] * ninv;
            return r;
        }
        case AlgebraKind::MatrixOverField: {
            ExactMatrix M(alg.m, alg.m, f);
            for (int r = 0; r < alg.m; ++r)
                for (int c = 0; c < alg.m; ++c) M.at(r, c) = x.coords[r * alg.m + c];
            auto inv = M.inverse();
            if (!inv) return std::nullopt;
            AlgebraElement r = zero_element(alg);
            for (int i = 0; i < alg.m; ++i)
                for (int c = 0; c < alg.m; ++c) r.coords[i * alg.m + c] = inv->at(i, c);
            return r;
        }
        case AlgebraKind::MatrixOverQuaternion: {
            ExactMatrix L = left_mult_operator(x);
            auto y = solve_linear(L, one_element(alg).coords);
            if (!y) return std::nullopt;
            AlgebraElement r{alg, *y};
            // L_x y = 1 gives a right inverse; in a finite-dimensional
            // algebra that forces two-sidedness, checked exactly.
            if (!(multiply(r, x) == one_element(alg))) return std::nullopt;
            return r;
        }
    }
    return std::nullopt;
}

/// Element of M_m(D) with (r, s) quaternion entry t_rs · d.
inline AlgebraElement kronecker_embed(const ExactMatrix& t, const AlgebraElement& d,
                                      const AlgebraDescriptor& target) {
    if (target.kind != AlgebraKind::MatrixOverQuaternion && target.kind != AlgebraKind::Quaternion)
        throw DomainError("kronecker_embed: target must be quaternionic");
    if (d.alg.kind != AlgebraKind::Quaternion || !(d.alg == target.quaternion_part()))
        throw DomainError("kronecker_embed: d must lie in the target's quaternion part");
    int m = target.kind == AlgebraKind::Quaternion ? 1 : target.m;
    if (t.rows() != m || t.cols() != m) throw DimensionError("kronecker_embed: t must be m x m");
    AlgebraElement r = zero_element(target);
    detail::Quat dq = quat_entry(d, 0, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (t.at(i, j).is_zero()) continue;
            detail::Quat q = dq;
            for (int u = 0; u < 4; ++u) q[u] = q[u] * t.at(i, j);
            set_quat_entry(r, i, j, q);
        }
    return r;
}

/// An F-basis of a subfield of the algebra, together with closure data.
struct SubfieldBasis {
    AlgebraDescriptor alg;
    std::vector<AlgebraElement> elements;
};

struct SubfieldWithPrimitive {
    SubfieldBasis L;
    AlgebraElement u;
};

/// Maximal subfield of a quaternion division algebra containing d:
/// {1, d} when d is noncentral (d is quadratic over F), else the fixed
/// fallback {1, i}.
inline SubfieldWithPrimitive subfield_containing(const AlgebraElement& d) {
    const auto& alg = d.alg;
    if (alg.kind != AlgebraKind::Quaternion)
        throw DomainError("subfield_containing: quaternion algebras only");
    AlgebraElement u = basis_element(alg, 1); // i
    if (!is_central(d)) u = d;
    SubfieldBasis L{alg, {one_element(alg), u}};
    return {L, u};
}

/// Uniform random element with coordinate numerators in [-height, height]
/// and denominators in [1, height].
inline AlgebraElement random_element(const AlgebraDescriptor& alg, Rng& rng, long height) {
    AlgebraElement x = zero_element(alg);
    for (auto& c : x.coords) {
        long num = rng.range(-height, height);
        long den = rng.range(1, height);
        c = Scalar::rational(num, den);
    }
    return x;
}

} // namespace commcert
