#pragma once

#include "commcert/algebra.hpp"
#include "commcert/linalg.hpp"

namespace commcert {

/// Faithful matrix representation used to re-check certificates. This is
/// deliberately a separate multiplication route from the structure-constant
/// product: quaternions go to explicit 4x4 left-multiplication blocks over
/// the base field, matrices of quaternions to the corresponding block
/// matrices, and products are then plain exact matrix products.
inline ExactMatrix regular_rep(const AlgebraElement& x) {
    const auto& alg = x.alg;
    const FieldDescriptor f = alg.base_field;
    const Scalar A = Scalar::from_int(f, alg.qa);
    const Scalar B = Scalar::from_int(f, alg.qb);

    auto quat_block = [&](ExactMatrix& M, int r0, int c0, const Scalar& q0, const Scalar& q1,
                          const Scalar& q2, const Scalar& q3) {
        // columns are q·1, q·i, q·j, q·k expanded by hand
        M.at(r0 + 0, c0 + 0) = q0;
        M.at(r0 + 1, c0 + 0) = q1;
        M.at(r0 + 2, c0 + 0) = q2;
        M.at(r0 + 3, c0 + 0) = q3;

        M.at(r0 + 0, c0 + 1) = A * q1;
        M.at(r0 + 1, c0 + 1) = q0;
        M.at(r0 + 2, c0 + 1) = -(A * q3);
        M.at(r0 + 3, c0 + 1) = -q2;

        M.at(r0 + 0, c0 + 2) = B * q2;
        M.at(r0 + 1, c0 + 2) = B * q3;
        M.at(r0 + 2, c0 + 2) = q0;
        M.at(r0 + 3, c0 + 2) = q1;

        M.at(r0 + 0, c0 + 3) = -(A * (B * q3));
        M.at(r0 + 1, c0 + 3) = -(B * q2);
        M.at(r0 + 2, c0 + 3) = A * q1;
        M.at(r0 + 3, c0 + 3) = q0;
    };

    switch (alg.kind) {
        case AlgebraKind::MatrixOverField: {
            ExactMatrix M(alg.m, alg.m, f);
            for (int r = 0; r < alg.m; ++r)
                for (int c = 0; c < alg.m; ++c) M.at(r, c) = x.coords[r * alg.m + c];
            return M;
        }
        case AlgebraKind::Quaternion: {
            ExactMatrix M(4, 4, f);
            quat_block(M, 0, 0, x.coords[0], x.coords[1], x.coords[2], x.coords[3]);
            return M;
        }
        case AlgebraKind::MatrixOverQuaternion: {
            int m = alg.m;
            ExactMatrix M(4 * m, 4 * m, f);
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) {
                    int base = (r * m + c) * 4;
                    quat_block(M, 4 * r, 4 * c, x.coords[base], x.coords[base + 1],
                               x.coords[base + 2], x.coords[base + 3]);
                }
            return M;
        }
    }
    throw DomainError("regular_rep: unknown algebra kind");
}

/// Exact check of a = [b,c]·[d,e] through the regular representation.
inline bool verify_product_of_two_commutators(const AlgebraElement& a, const AlgebraElement& b,
                                              const AlgebraElement& c, const AlgebraElement& d,
                                              const AlgebraElement& e) {
    ExactMatrix rb = regular_rep(b), rc = regular_rep(c);
    ExactMatrix rd = regular_rep(d), re = regular_rep(e);
    ExactMatrix lhs = (rb * rc - rc * rb) * (rd * re - re * rd);
    return lhs == regular_rep(a);
}

/// Exact check of x = [p, q] through the regular representation.
inline bool verify_commutator(const AlgebraElement& x, const AlgebraElement& p,
                              const AlgebraElement& q) {
    ExactMatrix rp = regular_rep(p), rq = regular_rep(q);
    return (rp * rq - rq * rp) == regular_rep(x);
}

} // namespace commcert
