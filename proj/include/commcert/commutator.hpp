#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "commcert/algebra.hpp"
#include "commcert/errors.hpp"
#include "commcert/hyperplane.hpp"
#include "commcert/linalg.hpp"
#include "commcert/rng.hpp"
#include "commcert/verify.hpp"

namespace commcert {

enum class CertPath { TrivialZero, DivisionCase, MatrixOverFieldCase, MatrixOverQuaternionCase };

inline const char* cert_path_name(CertPath p) {
    switch (p) {
        case CertPath::TrivialZero: return "TrivialZero";
        case CertPath::DivisionCase: return "DivisionCase";
        case CertPath::MatrixOverFieldCase: return "MatrixOverFieldCase";
        case CertPath::MatrixOverQuaternionCase: return "MatrixOverQuaternionCase";
    }
    return "?";
}

/// Witnesses for a = (bc-cb)(de-ed), re-checked through the regular
/// representation before `verified` is set.
struct CommutatorCertificate {
    AlgebraElement a, b, c, d, e;
    bool verified = false;
    CertPath path = CertPath::TrivialZero;
    int retries_used = 0;
};

/// Intermediates of the division-algebra construction, kept for audit:
/// W = [u,v]^{-1}(L + F v), [u,b] = d·w, w = [u,v]^{-1}(l + lambda·v).
struct DivisionTrace {
    AlgebraElement u, v, uv; // uv = [u,v]
    SubspaceBasis W_basis;
    AlgebraElement ell, b, w;
    Scalar lambda;
};

struct Decomposition {
    CommutatorCertificate cert;
    std::optional<DivisionTrace> division;
};

struct DecomposeOptions {
    std::uint64_t seed = 0;
    int factor_retry_cap = 64; // trace-zero pair search
    int ar_retry_cap = 256;    // pure-diagonal conjugation search
};

// ---------------------------------------------------------------------------
// quaternion building blocks
// ---------------------------------------------------------------------------

/// Witnesses (x, y) with [x, y] = q for a nonzero pure quaternion q.
/// x is scanned over i, j, k and then a twisted-orthogonal direction that
/// is always admissible; y solves the 4x4 linear system ad_x y = q.
inline std::pair<AlgebraElement, AlgebraElement> pure_quaternion_commutator(const AlgebraElement& q) {
    const auto& alg = q.alg;
    if (alg.kind != AlgebraKind::Quaternion)
        throw DomainError("pure_quaternion_commutator: quaternion algebras only");
    if (!reduced_trace(q).is_zero())
        throw DomainError("pure_quaternion_commutator: input must have reduced trace 0");
    if (q.is_zero()) throw ZeroElementError("pure_quaternion_commutator: input must be nonzero");

    auto try_x = [&](const AlgebraElement& x) -> std::optional<std::pair<AlgebraElement, AlgebraElement>> {
        auto y = solve_linear(ad_operator(x), q.coords);
        if (!y) return std::nullopt;
        return std::make_pair(x, AlgebraElement{alg, *y});
    };

    for (int t = 1; t <= 3; ++t)
        if (auto r = try_x(basis_element(alg, t))) return *r;

    // q has all three pure coordinates nonzero; the direction
    // (-q2/a, q1/b, 0) satisfies the solvability form q1 x1/b + q2 x2/a +
    // q3 x3 = 0 of the image of ad_x on pures.
    Scalar c1 = q.coords[1] / Scalar::from_int(alg.base_field, alg.qb);
    Scalar c2 = q.coords[2] / Scalar::from_int(alg.base_field, alg.qa);
    AlgebraElement x = zero_element(alg);
    x.coords[1] = -c2;
    x.coords[2] = c1;
    auto r = try_x(x);
    if (!r) throw DomainError("pure_quaternion_commutator: twisted direction not admissible");
    return *r;
}

/// x with p·x - x·q = c, as a 4x4 exact solve; unique when p and q have
/// distinct reduced characteristic polynomials.
inline std::optional<AlgebraElement> sylvester_solve(const AlgebraElement& p, const AlgebraElement& q,
                                                     const AlgebraElement& c) {
    const auto& alg = p.alg;
    if (alg.kind != AlgebraKind::Quaternion)
        throw DomainError("sylvester_solve: quaternion algebras only");
    detail::require_same(p, q);
    detail::require_same(p, c);
    int n = alg.dim();
    ExactMatrix M(n, n, alg.base_field);
    for (int col = 0; col < n; ++col) {
        AlgebraElement eb = basis_element(alg, col);
        AlgebraElement img = sub(multiply(p, eb), multiply(eb, q));
        for (int row = 0; row < n; ++row) M.at(row, col) = img.coords[row];
    }
    auto x = solve_linear(M, c.coords);
    if (!x) return std::nullopt;
    return AlgebraElement{alg, *x};
}

// ---------------------------------------------------------------------------
// matrices over the base field
// ---------------------------------------------------------------------------

namespace detail {

inline ExactMatrix element_as_matrix(const AlgebraElement& x) {
    const auto& alg = x.alg;
    ExactMatrix M(alg.m, alg.m, alg.base_field);
    for (int r = 0; r < alg.m; ++r)
        for (int c = 0; c < alg.m; ++c) M.at(r, c) = x.coords[r * alg.m + c];
    return M;
}

inline AlgebraElement matrix_as_element(const AlgebraDescriptor& alg, const ExactMatrix& M) {
    AlgebraElement x = zero_element(alg);
    for (int r = 0; r < alg.m; ++r)
        for (int c = 0; c < alg.m; ++c) x.coords[r * alg.m + c] = M.at(r, c);
    return x;
}

inline bool diagonal_is_zero(const ExactMatrix& M) {
    for (int r = 0; r < M.rows(); ++r)
        if (!M.at(r, r).is_zero()) return false;
    return true;
}

} // namespace detail

/// Invertible S with S^{-1} X S of zero diagonal, for trace-zero nonzero
/// X over Q. Searches v with {v, Xv} independent over unit vectors, then
/// pair sums/differences, then small integer grids; puts Xv second in the
/// new basis so the leading diagonal entry vanishes, and recurses on the
/// trailing block.
inline ExactMatrix zero_diagonal_similarity(const ExactMatrix& X) {
    const FieldDescriptor f = X.field();
    int m = X.rows();
    if (X.cols() != m) throw DimensionError("zero_diagonal_similarity: square input required");
    if (!X.trace().is_zero()) throw DomainError("zero_diagonal_similarity: trace must be 0");
    if (m == 1 || detail::diagonal_is_zero(X)) return ExactMatrix::identity(m, f);

    auto independent = [&](const Vec& v) -> std::optional<Vec> {
        Vec xv = X.apply(v);
        ExactMatrix two(m, 2, f);
        for (int i = 0; i < m; ++i) {
            two.at(i, 0) = v[i];
            two.at(i, 1) = xv[i];
        }
        if (two.rank() != 2) return std::nullopt;
        return xv;
    };

    Vec v;
    std::optional<Vec> xv;
    auto unit = [&](int r) {
        Vec u(m, Scalar::zero(f));
        u[r] = Scalar::one(f);
        return u;
    };
    for (int r = 0; r < m && !xv; ++r) {
        v = unit(r);
        xv = independent(v);
    }
    for (int r = 0; r < m && !xv; ++r)
        for (int s = r + 1; s < m && !xv; ++s)
            for (int sign = 0; sign < 2 && !xv; ++sign) {
                v = unit(r);
                v[s] = sign == 0 ? Scalar::one(f) : -Scalar::one(f);
                xv = independent(v);
            }
    for (long bound = 2; bound <= 3 && !xv; ++bound) {
        // small integer grid sweep; a nonscalar matrix always has a
        // non-eigenvector among the earlier candidates, so this is a
        // safety net rather than a hot path
        std::vector<long> digits(m, -bound);
        while (!xv) {
            bool allzero = true;
            for (long d : digits) allzero = allzero && d == 0;
            if (!allzero) {
                v.assign(m, Scalar::zero(f));
                for (int i = 0; i < m; ++i) v[i] = Scalar::from_int(f, digits[i]);
                xv = independent(v);
            }
            int pos = m - 1;
            while (pos >= 0 && digits[pos] == bound) digits[pos--] = -bound;
            if (pos < 0) break;
            ++digits[pos];
        }
    }
    if (!xv)
        throw SearchExhaustedError("zero_diagonal_similarity: no non-eigenvector found",
                                   "candidate sweep through +-3 grid exhausted");

    // Basis [v, Xv, extension by unit vectors]
    std::vector<Vec> basis{v, *xv};
    for (int r = 0; r < m && static_cast<int>(basis.size()) < m; ++r) {
        std::vector<Vec> trial = basis;
        trial.push_back(unit(r));
        ExactMatrix T(m, static_cast<int>(trial.size()), f);
        for (int j = 0; j < static_cast<int>(trial.size()); ++j)
            for (int i = 0; i < m; ++i) T.at(i, j) = trial[j][i];
        if (T.rank() == static_cast<int>(trial.size())) basis = std::move(trial);
    }
    ExactMatrix B(m, m, f);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) B.at(i, j) = basis[j][i];
    ExactMatrix Y = *B.inverse() * X * B;

    if (m == 2) return B; // trailing 1x1 block is forced to zero by the trace

    ExactMatrix Yt(m - 1, m - 1, f);
    for (int r = 1; r < m; ++r)
        for (int c = 1; c < m; ++c) Yt.at(r - 1, c - 1) = Y.at(r, c);
    ExactMatrix St = Yt.is_zero() ? ExactMatrix::identity(m - 1, f) : zero_diagonal_similarity(Yt);
    ExactMatrix S = ExactMatrix::identity(m, f);
    for (int r = 1; r < m; ++r)
        for (int c = 1; c < m; ++c) S.at(r, c) = St.at(r - 1, c - 1);
    return B * S;
}

/// (P, Q) with [P, Q] = X for a nonzero trace-zero X over Q: conjugate to
/// zero diagonal, take P' = diag(1..m) and Q'_rs = Z_rs/(r-s), conjugate
/// back.
inline std::pair<AlgebraElement, AlgebraElement> shoda_commutator(const AlgebraElement& Xe) {
    const auto& alg = Xe.alg;
    if (alg.kind != AlgebraKind::MatrixOverField || alg.m < 2)
        throw DomainError("shoda_commutator: M_m(F) with m >= 2 required");
    if (!reduced_trace(Xe).is_zero()) throw DomainError("shoda_commutator: trace must be 0");
    if (Xe.is_zero()) throw ZeroElementError("shoda_commutator: input must be nonzero");
    const FieldDescriptor f = alg.base_field;
    int m = alg.m;
    ExactMatrix X = detail::element_as_matrix(Xe);
    ExactMatrix S = zero_diagonal_similarity(X);
    ExactMatrix Sinv = *S.inverse();
    ExactMatrix Z = Sinv * X * S;
    ExactMatrix P(m, m, f), Q(m, m, f);
    for (int r = 0; r < m; ++r) P.at(r, r) = Scalar::from_int(f, r + 1);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c)
            if (r != c) Q.at(r, c) = Z.at(r, c) / Scalar::from_int(f, (r + 1) - (c + 1));
    return {detail::matrix_as_element(alg, S * P * Sinv),
            detail::matrix_as_element(alg, S * Q * Sinv)};
}

namespace detail {

inline std::vector<ExactMatrix> trace_zero_invertible_catalog(int m, FieldDescriptor f) {
    std::vector<ExactMatrix> out;
    auto push_if_ok = [&](const ExactMatrix& g) {
        if (!g.trace().is_zero()) return;
        if (g.determinant().is_zero()) return;
        for (const auto& h : out)
            if (h == g) return;
        out.push_back(g);
    };
    Scalar one = Scalar::one(f);
    // antidiagonal of ones (trace zero only for even m)
    {
        ExactMatrix g(m, m, f);
        for (int r = 0; r < m; ++r) g.at(r, m - 1 - r) = one;
        push_if_ok(g);
    }
    // cyclic shift, plain and with one sign flip, and its transpose
    {
        ExactMatrix g(m, m, f);
        for (int r = 0; r < m; ++r) g.at((r + 1) % m, r) = one;
        push_if_ok(g);
        ExactMatrix gs = g;
        gs.at(0, m - 1) = -one;
        push_if_ok(gs);
        push_if_ok(g.transpose());
    }
    // alternating diagonal (even m)
    if (m % 2 == 0) {
        ExactMatrix g(m, m, f);
        for (int r = 0; r < m; ++r) g.at(r, r) = r % 2 == 0 ? one : -one;
        push_if_ok(g);
    }
    // diag(1,...,1, -(m-1)) for odd m
    if (m % 2 == 1 && m > 1) {
        ExactMatrix g(m, m, f);
        for (int r = 0; r + 1 < m; ++r) g.at(r, r) = one;
        g.at(m - 1, m - 1) = Scalar::from_int(f, -(m - 1));
        push_if_ok(g);
    }
    // antidiagonal with a sign flip
    {
        ExactMatrix g(m, m, f);
        for (int r = 0; r < m; ++r) g.at(r, m - 1 - r) = r == 0 ? -one : one;
        push_if_ok(g);
    }
    return out;
}

} // namespace detail

/// a = g·h with trace(g) = trace(h) = 0 and g invertible, for nonzero a
/// over Q. Deterministic catalog first, then a catalog line search
/// g = g0 + t·e_rs whose acceptance polynomial tr(adj(g0 + t e_rs)·a) is
/// linear in t because the update has rank one, then a bounded randomized
/// variant of the same search.
inline std::pair<ExactMatrix, ExactMatrix> trace_zero_pair_factorization(const ExactMatrix& a,
                                                                         Rng& rng, int retry_cap,
                                                                         int& retries_used) {
    const FieldDescriptor f = a.field();
    int m = a.rows();
    if (m < 2) throw DomainError("trace_zero_pair_factorization: m >= 2 required");
    if (a.is_zero()) throw ZeroElementError("trace_zero_pair_factorization: a must be nonzero");

    auto finish = [&](const ExactMatrix& g) -> std::optional<std::pair<ExactMatrix, ExactMatrix>> {
        auto ginv = g.inverse();
        if (!ginv) return std::nullopt;
        ExactMatrix h = *ginv * a;
        if (!h.trace().is_zero()) return std::nullopt;
        return std::make_pair(g, h);
    };

    auto catalog = detail::trace_zero_invertible_catalog(m, f);
    for (const auto& g : catalog)
        if (auto r = finish(g)) return *r;

    auto line_search = [&](const ExactMatrix& g0, int r, int s)
        -> std::optional<std::pair<ExactMatrix, ExactMatrix>> {
        ExactMatrix g1(m, m, f);
        g1.at(r, s) = Scalar::one(f);
        Scalar p0 = (g0.adjugate() * a).trace();
        Scalar p_at_1 = ((g0 + g1).adjugate() * a).trace();
        Scalar slope = p_at_1 - p0;
        if (slope.is_zero()) return std::nullopt;
        Scalar t = -p0 / slope;
        ExactMatrix g = g0 + g1.scaled(t);
        return finish(g);
    };

    for (const auto& g0 : catalog)
        for (int r = 0; r < m; ++r)
            for (int s = 0; s < m; ++s)
                if (r != s)
                    if (auto res = line_search(g0, r, s)) return *res;

    std::ostringstream transcript;
    for (int attempt = 0; attempt < retry_cap; ++attempt) {
        ++retries_used;
        ExactMatrix g0(m, m, f);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) g0.at(i, j) = Scalar::from_int(f, rng.range(-16, 16));
        Scalar diag_rest = Scalar::zero(f);
        for (int i = 0; i + 1 < m; ++i) diag_rest += g0.at(i, i);
        g0.at(m - 1, m - 1) = -diag_rest;
        if (g0.determinant().is_zero()) {
            transcript << "attempt " << attempt << ": singular g0\n";
            continue;
        }
        int r = static_cast<int>(rng.below(m));
        int s = static_cast<int>(rng.below(m));
        if (r == s) s = (s + 1) % m;
        if (auto res = line_search(g0, r, s)) return *res;
        transcript << "attempt " << attempt << ": flat acceptance polynomial\n";
    }
    throw SearchExhaustedError("trace_zero_pair_factorization: retry cap reached",
                               transcript.str());
}

// ---------------------------------------------------------------------------
// Amitsur–Rowen style commutator step for matrices over quaternions
// ---------------------------------------------------------------------------

namespace detail {

inline Quat quat_of(const AlgebraElement& x, int r, int s) { return quat_entry(x, r, s); }

inline bool quat_is_zero(const Quat& q) {
    return q[0].is_zero() && q[1].is_zero() && q[2].is_zero() && q[3].is_zero();
}

/// I + c·e_{rs} inside M_m(D); its inverse is I - c·e_{rs}.
inline AlgebraElement elementary_conj(const AlgebraDescriptor& alg, int r, int s, const Quat& c) {
    AlgebraElement E = one_element(alg);
    set_quat_entry(E, r, s, c);
    return E;
}

inline std::vector<Quat> mixing_catalog(FieldDescriptor f) {
    std::vector<Quat> out;
    auto q = [&](long w, long x, long y, long z) {
        out.push_back(Quat{Scalar::from_int(f, w), Scalar::from_int(f, x), Scalar::from_int(f, y),
                           Scalar::from_int(f, z)});
    };
    q(1, 0, 0, 0);
    q(0, 1, 0, 0);
    q(0, 0, 1, 0);
    q(0, 0, 0, 1);
    q(1, 1, 0, 0);
    q(1, 0, 1, 0);
    q(1, 0, 0, 1);
    q(0, 1, 1, 0);
    q(0, 1, 0, 1);
    q(0, 0, 1, 1);
    q(2, 0, 0, 0);
    q(1, 1, 1, 1);
    return out;
}

} // namespace detail

/// (P, Q) with [P, Q] = X for a noncentral X of reduced trace 0 in
/// M_m(D), m >= 2, D a definite quaternion algebra. Stage 1 conjugates X
/// so every diagonal entry is a pure quaternion (the real parts are moved
/// into the last slot one at a time, where they cancel because the total
/// reduced trace is 0). Stage 2 picks a pure diagonal P' with pairwise
/// distinct norms; stage 3 solves the diagonal by the pure-commutator
/// system and the off-diagonal entries by Sylvester solves; stage 4
/// conjugates back.
inline std::pair<AlgebraElement, AlgebraElement> ar_commutator(const AlgebraElement& X0, Rng& rng,
                                                               int retry_cap, int& retries_used) {
    const auto& alg = X0.alg;
    if (alg.kind != AlgebraKind::MatrixOverQuaternion || alg.m < 2)
        throw DomainError("ar_commutator: M_m(D) with m >= 2 required");
    if (!reduced_trace(X0).is_zero()) throw DomainError("ar_commutator: reduced trace must be 0");
    if (X0.is_zero()) throw ZeroElementError("ar_commutator: input must be noncentral");
    const FieldDescriptor f = alg.base_field;
    const int m = alg.m;
    AlgebraDescriptor D = alg.quaternion_part();

    AlgebraElement X = X0;
    AlgebraElement S = one_element(alg);
    AlgebraElement Sinv = one_element(alg);
    auto conjugate_by = [&](int r, int s, const detail::Quat& c) {
        AlgebraElement E = detail::elementary_conj(alg, r, s, c);
        detail::Quat neg = c;
        for (auto& t : neg) t = -t;
        AlgebraElement Einv = detail::elementary_conj(alg, r, s, neg);
        X = multiply(multiply(E, X), Einv);
        S = multiply(E, S);
        Sinv = multiply(Sinv, Einv);
    };

    // Stage 1: clear the real part of each diagonal entry in turn by
    // shifting it into a later row s > r. Clearing row r moves its real
    // part into row s only, so one left-to-right pass suffices and the
    // last row cleans up automatically because the total reduced trace
    // is 0. If every candidate sink had a zero pivot and an identically
    // vanishing mixing map, all trailing diagonal entries would equal the
    // same nonzero rational, contradicting trace 0, so a sink always
    // exists.
    std::ostringstream transcript;
    auto transfer_into = [&](int r, int s) {
        // c = t·conj(pivot) with t = -Re(X_rr)/N(pivot) shifts exactly
        // -Re(X_rr) from slot (s,s) into slot (r,r).
        detail::Quat pivot = quat_entry(X, s, r);
        Scalar norm = detail::quat_norm(pivot, alg.qa, alg.qb, f);
        Scalar t = -(quat_entry(X, r, r)[0] / norm);
        detail::Quat c = detail::quat_conj(pivot);
        for (auto& u : c) u = u * t;
        conjugate_by(r, s, c);
    };
    auto try_mix = [&](int r, int s, const detail::Quat& c) {
        detail::Quat xrr = quat_entry(X, r, r);
        detail::Quat xss = quat_entry(X, s, s);
        detail::Quat xrs = quat_entry(X, r, s);
        detail::Quat t1 = detail::quat_mul(c, xrr, alg.qa, alg.qb, f);
        detail::Quat t2 = detail::quat_mul(xss, c, alg.qa, alg.qb, f);
        detail::Quat t3 =
            detail::quat_mul(detail::quat_mul(c, xrs, alg.qa, alg.qb, f), c, alg.qa, alg.qb, f);
        detail::Quat cand;
        for (int t = 0; t < 4; ++t) cand[t] = t1[t] - t2[t] - t3[t];
        return !detail::quat_is_zero(cand);
    };
    for (int r = 0; r < m; ++r) {
        if (quat_entry(X, r, r)[0].is_zero()) continue;
        if (r == m - 1)
            throw DomainError("ar_commutator: last diagonal entry cannot carry real part");
        int chosen = -1;
        for (int s = r + 1; s < m && chosen < 0; ++s) {
            if (!detail::quat_is_zero(quat_entry(X, s, r))) {
                chosen = s;
                break;
            }
            for (const auto& c : detail::mixing_catalog(f))
                if (try_mix(r, s, c)) {
                    conjugate_by(s, r, c);
                    chosen = s;
                    break;
                }
        }
        while (chosen < 0) {
            if (retries_used >= retry_cap)
                throw SearchExhaustedError("ar_commutator: mixing search exhausted",
                                           transcript.str());
            ++retries_used;
            int s = r + 1 + static_cast<int>(rng.below(m - r - 1));
            detail::Quat c{Scalar::rational(rng.range(-4, 4), rng.range(1, 2)),
                           Scalar::rational(rng.range(-4, 4), rng.range(1, 2)),
                           Scalar::rational(rng.range(-4, 4), rng.range(1, 2)),
                           Scalar::rational(rng.range(-4, 4), rng.range(1, 2))};
            if (detail::quat_is_zero(c)) continue;
            if (try_mix(r, s, c)) {
                conjugate_by(s, r, c);
                chosen = s;
            } else {
                transcript << "random mixing attempt for rows (" << r << "," << s
                           << ") left the pivot zero\n";
            }
        }
        transfer_into(r, chosen);
    }
    for (int r = 0; r < m; ++r)
        if (!quat_entry(X, r, r)[0].is_zero())
            throw DomainError("ar_commutator: diagonal purification failed");

    // Stage 2: pure diagonal P' with pairwise distinct reduced norms.
    std::vector<AlgebraElement> p_entries;
    std::vector<Scalar> norms;
    for (int r = 0; r < m; ++r) {
        detail::Quat xq = quat_entry(X, r, r);
        AlgebraElement diag_entry{D, {xq[0], xq[1], xq[2], xq[3]}};
        AlgebraElement dir = basis_element(D, 1);
        if (!diag_entry.is_zero())
            dir = pure_quaternion_commutator(diag_entry).first;
        for (long scale_factor = 1;; ++scale_factor) {
            AlgebraElement cand = scale(dir, Scalar::from_int(f, scale_factor));
            Scalar n = detail::quat_norm(quat_entry(cand, 0, 0), alg.qa, alg.qb, f);
            bool clash = false;
            for (const auto& prev : norms) clash = clash || prev == n;
            if (!clash) {
                p_entries.push_back(cand);
                norms.push_back(n);
                break;
            }
        }
    }

    // Stage 3: solve for Q' entrywise.
    AlgebraElement Pp = zero_element(alg);
    AlgebraElement Qp = zero_element(alg);
    for (int r = 0; r < m; ++r) set_quat_entry(Pp, r, r, quat_entry(p_entries[r], 0, 0));
    for (int r = 0; r < m; ++r) {
        detail::Quat xq = quat_entry(X, r, r);
        AlgebraElement rhs{D, {xq[0], xq[1], xq[2], xq[3]}};
        if (rhs.is_zero()) continue;
        auto y = solve_linear(ad_operator(p_entries[r]), rhs.coords);
        if (!y) throw DomainError("ar_commutator: diagonal solve failed");
        set_quat_entry(Qp, r, r, {(*y)[0], (*y)[1], (*y)[2], (*y)[3]});
    }
    for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) {
            if (r == s) continue;
            detail::Quat xq = quat_entry(X, r, s);
            if (detail::quat_is_zero(xq)) continue;
            AlgebraElement rhs{D, {xq[0], xq[1], xq[2], xq[3]}};
            auto y = sylvester_solve(p_entries[r], p_entries[s], rhs);
            if (!y) throw DomainError("ar_commutator: Sylvester solve failed");
            set_quat_entry(Qp, r, s, quat_entry(*y, 0, 0));
        }

    // Stage 4: conjugate back.
    AlgebraElement P = multiply(multiply(Sinv, Pp), S);
    AlgebraElement Q = multiply(multiply(Sinv, Qp), S);
    if (!verify_commutator(X0, P, Q)) throw DomainError("ar_commutator: verification failed");
    return {P, Q};
}

// ---------------------------------------------------------------------------
// the three decomposition pipelines
// ---------------------------------------------------------------------------

struct DivisionResult {
    CommutatorCertificate cert;
    DivisionTrace trace;
};

/// Fully deterministic division-algebra case: d = [u, b]·w^{-1} with
/// w picked in im(ad_u) ∩ d·W and w^{-1} expanded as a commutator by the
/// lambda = 0 / lambda != 0 branch formulas.
inline DivisionResult division_two_commutators(const AlgebraElement& d) {
    const auto& alg = d.alg;
    if (alg.kind != AlgebraKind::Quaternion)
        throw DomainError("division_two_commutators: quaternion algebras only");
    if (d.is_zero()) throw ZeroElementError("division_two_commutators: zero is handled upstream");
    const FieldDescriptor f = alg.base_field;
    int n = alg.dim();

    auto [L, u] = subfield_containing(d);
    AlgebraElement v = zero_element(alg);
    AlgebraElement uv = zero_element(alg);
    for (int t = 1; t < 4; ++t) {
        v = basis_element(alg, t);
        uv = commutator(u, v);
        if (!uv.is_zero()) break;
    }
    if (uv.is_zero()) throw DomainError("division_two_commutators: input generates the center");
    AlgebraElement uv_inv = *inverse(uv);

    // W = [u,v]^{-1}(L + F v), spanned by its three construction vectors.
    std::vector<AlgebraElement> w_gens{multiply(uv_inv, one_element(alg)), multiply(uv_inv, u),
                                       multiply(uv_inv, v)};
    SubspaceBasis W{n, {}};
    for (const auto& g : w_gens) W.vectors.push_back(g.coords);

    SubspaceBasis dW{n, {}};
    for (const auto& g : w_gens) dW.vectors.push_back(multiply(d, g).coords);
    ExactMatrix ad_u = ad_operator(u);
    SubspaceBasis image = column_space(ad_u);
    SubspaceBasis meet = intersect_subspaces(image, dW);
    if (meet.vectors.empty())
        throw DomainError("division_two_commutators: empty intersection, dimension count violated");

    AlgebraElement x{alg, meet.vectors.front()};
    AlgebraElement w = multiply(*inverse(d), x);
    auto b_coords = solve_linear(ad_u, x.coords);
    if (!b_coords) throw DomainError("division_two_commutators: [u,b] = dw unsolvable");
    AlgebraElement b{alg, *b_coords};

    // Coordinates of [u,v]·w in the basis (1, u, v) of L + F v.
    AlgebraElement y = multiply(uv, w);
    ExactMatrix basis3(n, 3, f);
    AlgebraElement ones = one_element(alg);
    for (int i = 0; i < n; ++i) {
        basis3.at(i, 0) = ones.coords[i];
        basis3.at(i, 1) = u.coords[i];
        basis3.at(i, 2) = v.coords[i];
    }
    auto coeffs = solve_linear(basis3, y.coords);
    if (!coeffs) throw DomainError("division_two_commutators: w is outside [u,v]^{-1}(L + Fv)");
    Scalar lambda = (*coeffs)[2];
    AlgebraElement ell = add(scale(ones, (*coeffs)[0]), scale(u, (*coeffs)[1]));

    AlgebraElement cw1 = zero_element(alg), cw2 = zero_element(alg);
    if (lambda.is_zero()) {
        // w^{-1} = l^{-1}[u,v] = [u, l^{-1} v]
        cw1 = u;
        cw2 = multiply(*inverse(ell), v);
    } else {
        // w^{-1} = [lambda^{-1} (l + lambda v)^{-1} u, l + lambda v]
        AlgebraElement s = add(ell, scale(v, lambda));
        cw1 = scale(multiply(*inverse(s), u), lambda.inverse());
        cw2 = s;
    }

    CommutatorCertificate cert{d, u, b, cw1, cw2, false, CertPath::DivisionCase, 0};
    cert.verified = verify_product_of_two_commutators(d, u, b, cw1, cw2);
    if (!cert.verified) throw DomainError("division_two_commutators: verification failed");
    return DivisionResult{cert, DivisionTrace{u, v, uv, W, ell, b, w, lambda}};
}

inline CommutatorCertificate matrix_field_two_commutators(const AlgebraElement& a, Rng& rng,
                                                          const DecomposeOptions& opt) {
    const auto& alg = a.alg;
    if (alg.kind != AlgebraKind::MatrixOverField || alg.m < 2)
        throw DomainError("matrix_field_two_commutators: M_m(F) with m >= 2 required");
    int retries = 0;
    auto [g, h] =
        trace_zero_pair_factorization(detail::element_as_matrix(a), rng, opt.factor_retry_cap, retries);
    auto ge = detail::matrix_as_element(alg, g);
    auto he = detail::matrix_as_element(alg, h);
    auto [b, c] = shoda_commutator(ge);
    auto [d, e] = shoda_commutator(he);
    CommutatorCertificate cert{a, b, c, d, e, false, CertPath::MatrixOverFieldCase, retries};
    cert.verified = verify_product_of_two_commutators(a, b, c, d, e);
    if (!cert.verified) throw DomainError("matrix_field_two_commutators: verification failed");
    return cert;
}

inline CommutatorCertificate matrix_quaternion_two_commutators(const AlgebraElement& a, Rng& rng,
                                                               const DecomposeOptions& opt) {
    const auto& alg = a.alg;
    if (alg.kind != AlgebraKind::MatrixOverQuaternion || alg.m < 2)
        throw DomainError("matrix_quaternion_two_commutators: M_m(D) with m >= 2 required");
    if (a.is_zero()) throw ZeroElementError("matrix_quaternion_two_commutators: zero handled upstream");
    const FieldDescriptor f = alg.base_field;
    int m = alg.m;

    // t = I + lambda·e_12 over F; at most one such t can contain a in t⊗D.
    std::optional<ExactMatrix> t_choice;
    for (long lam = 1; lam <= 3; ++lam) {
        ExactMatrix t = ExactMatrix::identity(m, f);
        t.at(0, 1) = Scalar::from_int(f, lam);
        if (!member_of_t_tensor_D(a, t)) {
            t_choice = t;
            break;
        }
    }
    if (!t_choice)
        throw DomainError("matrix_quaternion_two_commutators: no admissible t in the catalog");

    LinearFunctional tau = reduced_trace_functional(alg);
    HyperplaneFactorization hf = hyperplane_factorize(a, tau, *t_choice);
    if (is_central(hf.h1) || is_central(hf.h2))
        throw DomainError("matrix_quaternion_two_commutators: factor unexpectedly central");

    int retries = 0;
    auto [b, c] = ar_commutator(hf.h1, rng, opt.ar_retry_cap, retries);
    auto [d, e] = ar_commutator(hf.h2, rng, opt.ar_retry_cap, retries);
    CommutatorCertificate cert{a, b, c, d, e, false, CertPath::MatrixOverQuaternionCase, retries};
    cert.verified = verify_product_of_two_commutators(a, b, c, d, e);
    if (!cert.verified) throw DomainError("matrix_quaternion_two_commutators: verification failed");
    return cert;
}

/// Dispatcher. Refuses fields; zero gets the trivial [b,c]·[d,d] = 0
/// certificate; division, matrix-over-field and matrix-over-quaternion
/// inputs go to their pipelines.
inline Decomposition decompose(const AlgebraElement& a, const DecomposeOptions& opt = {}) {
    const auto& alg = a.alg;
    if (is_field(alg))
        throw IsAFieldError("decompose: " + alg.name() + " is a field, the theorem excludes it");
    Rng rng(opt.seed);

    if (a.is_zero()) {
        AlgebraElement b = basis_element(alg, 0);
        AlgebraElement c = basis_element(alg, alg.dim() > 1 ? 1 : 0);
        AlgebraElement d = basis_element(alg, 0);
        CommutatorCertificate cert{a, b, c, d, d, false, CertPath::TrivialZero, 0};
        cert.verified = verify_product_of_two_commutators(a, b, c, d, d);
        return {cert, std::nullopt};
    }

    switch (alg.kind) {
        case AlgebraKind::Quaternion: {
            DivisionResult r = division_two_commutators(a);
            return {r.cert, r.trace};
        }
        case AlgebraKind::MatrixOverField:
            return {matrix_field_two_commutators(a, rng, opt), std::nullopt};
        case AlgebraKind::MatrixOverQuaternion: {
            if (alg.m == 1) {
                // M_1(D) is D itself; reuse the division pipeline on the
                // quaternion coordinates.
                AlgebraDescriptor D = alg.quaternion_part();
                DivisionResult r = division_two_commutators(AlgebraElement{D, a.coords});
                auto lift = [&](const AlgebraElement& x) { return AlgebraElement{alg, x.coords}; };
                CommutatorCertificate cert{a,
                                           lift(r.cert.b),
                                           lift(r.cert.c),
                                           lift(r.cert.d),
                                           lift(r.cert.e),
                                           false,
                                           CertPath::DivisionCase,
                                           0};
                cert.verified =
                    verify_product_of_two_commutators(cert.a, cert.b, cert.c, cert.d, cert.e);
                DivisionTrace tr{lift(r.trace.u), lift(r.trace.v),   lift(r.trace.uv),
                                 r.trace.W_basis, lift(r.trace.ell), lift(r.trace.b),
                                 lift(r.trace.w), r.trace.lambda};
                return {cert, tr};
            }
            return {matrix_quaternion_two_commutators(a, rng, opt), std::nullopt};
        }
    }
    throw DomainError("decompose: unknown algebra kind");
}

} // namespace commcert
