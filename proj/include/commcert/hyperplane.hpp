#pragma once

#include <optional>

#include "commcert/algebra.hpp"
#include "commcert/linalg.hpp"

namespace commcert {

/// a = h1·h2 with both factors in ker(tau), h2 = t ⊗ (k0^{-1} d0) and
/// h1 = a · (t^{-1} ⊗ (d0^{-1} k0)).
struct HyperplaneFactorization {
    AlgebraElement a, h1, h2;
    LinearFunctional tau;
    ExactMatrix t;
    AlgebraElement d0, k0; // elements of D
    SubfieldBasis K;
};

/// Default maximal subfield K = F(i) of the quaternion part.
inline SubfieldBasis default_subfield(const AlgebraDescriptor& alg) {
    AlgebraDescriptor D = alg.quaternion_part();
    return SubfieldBasis{D, {one_element(D), basis_element(D, 1)}};
}

namespace detail {

/// m and the quaternionic carrier for an M_m(D) viewpoint: plain
/// Quaternion descriptors are treated as m = 1.
inline int matrix_size(const AlgebraDescriptor& alg) {
    return alg.kind == AlgebraKind::Quaternion ? 1 : alg.m;
}

/// t ⊗ d for either quaternionic kind.
inline AlgebraElement kron(const AlgebraDescriptor& alg, const ExactMatrix& t,
                           const AlgebraElement& d) {
    if (alg.kind == AlgebraKind::Quaternion) {
        AlgebraElement r = d;
        for (auto& c : r.coords) c = c * t.at(0, 0);
        return r;
    }
    return kronecker_embed(t, d, alg);
}

} // namespace detail

/// Nonzero d0 in D with tau(t ⊗ (k·d0)) = 0 for every k in the span of K,
/// found as a kernel vector of the n x n^2 coordinate matrix of
/// d -> (k_s -> tau(t ⊗ k_s d)). Refuses matrix-over-field descriptors,
/// whose quaternion part is trivial.
inline AlgebraElement find_d0(const LinearFunctional& tau, const ExactMatrix& t,
                              const SubfieldBasis& K) {
    const AlgebraDescriptor& alg = tau.alg;
    if (!alg.quaternionic())
        throw DomainError("find_d0: requires degree n > 1 (quaternionic algebra)");
    AlgebraDescriptor D = alg.quaternion_part();
    int n = alg.degree_of_D();
    int dimD = D.dim();
    ExactMatrix U(static_cast<int>(K.elements.size()), dimD, alg.base_field);
    for (std::size_t s = 0; s < K.elements.size(); ++s)
        for (int q = 0; q < dimD; ++q) {
            AlgebraElement kd = multiply(K.elements[s], basis_element(D, q));
            U.at(static_cast<int>(s), q) = tau.apply(detail::kron(alg, t, kd));
        }
    SubspaceBasis ker = kernel_basis(U);
    if (ker.vectors.empty())
        throw DomainError("find_d0: U has trivial kernel, which contradicts dim D = n^2 > n");
    (void)n;
    return AlgebraElement{D, ker.vectors.front()};
}

/// Whether a lies in the 4-dimensional subspace t ⊗ D.
inline std::optional<AlgebraElement> member_of_t_tensor_D(const AlgebraElement& a,
                                                          const ExactMatrix& t) {
    const AlgebraDescriptor& alg = a.alg;
    AlgebraDescriptor D = alg.quaternion_part();
    int dim = alg.dim();
    ExactMatrix M(dim, D.dim(), alg.base_field);
    for (int q = 0; q < D.dim(); ++q) {
        AlgebraElement col = detail::kron(alg, t, basis_element(D, q));
        for (int i = 0; i < dim; ++i) M.at(i, q) = col.coords[i];
    }
    auto x = solve_linear(M, a.coords);
    if (!x) return std::nullopt;
    return AlgebraElement{D, *x};
}

/// Constructive hyperplane factorization for a ≠ 0 in M_m(D), D
/// quaternionic: both factors land in ker(tau) and the product is a.
inline HyperplaneFactorization hyperplane_factorize(
    const AlgebraElement& a, const LinearFunctional& tau, const ExactMatrix& t,
    std::optional<SubfieldBasis> K_opt = std::nullopt) {
    const AlgebraDescriptor& alg = a.alg;
    if (!alg.quaternionic())
        throw DomainError("hyperplane_factorize: quaternionic algebras only");
    if (a.is_zero()) throw ZeroElementError("hyperplane_factorize: a must be nonzero");
    if (!(tau.alg == alg)) throw DomainError("hyperplane_factorize: functional algebra mismatch");
    int m = detail::matrix_size(alg);
    if (t.rows() != m || t.cols() != m) throw DimensionError("hyperplane_factorize: t must be m x m");
    auto tinv = t.inverse();
    if (!tinv) throw DomainError("hyperplane_factorize: t must be invertible");

    AlgebraDescriptor D = alg.quaternion_part();
    SubfieldBasis K = K_opt ? *K_opt : default_subfield(alg);

    AlgebraElement d0 = find_d0(tau, t, K);
    AlgebraElement d0inv = *inverse(d0); // nonzero in a division algebra

    // Candidates a·(t^{-1} ⊗ d0^{-1} k_s); k0 comes from the kernel of tau
    // restricted to their span.
    std::vector<AlgebraElement> cand;
    for (const auto& ks : K.elements)
        cand.push_back(multiply(a, detail::kron(alg, *tinv, multiply(d0inv, ks))));
    ExactMatrix row(1, static_cast<int>(cand.size()), alg.base_field);
    for (std::size_t s = 0; s < cand.size(); ++s)
        row.at(0, static_cast<int>(s)) = tau.apply(cand[s]);
    SubspaceBasis ker = kernel_basis(row);
    if (ker.vectors.empty())
        throw DomainError("hyperplane_factorize: intersection with the hyperplane is trivial");

    // Deterministic pick: the kernel basis vector of smallest height.
    std::size_t best = 0, best_h = SIZE_MAX;
    for (std::size_t v = 0; v < ker.vectors.size(); ++v) {
        std::size_t h = 0;
        for (const auto& c : ker.vectors[v]) h += c.height_bits();
        if (h < best_h) {
            best_h = h;
            best = v;
        }
    }
    AlgebraElement k0 = zero_element(D);
    for (std::size_t s = 0; s < K.elements.size(); ++s)
        k0 = add(k0, scale(K.elements[s], ker.vectors[best][s]));

    AlgebraElement k0inv = *inverse(k0);
    AlgebraElement h1 = multiply(a, detail::kron(alg, *tinv, multiply(d0inv, k0)));
    AlgebraElement h2 = detail::kron(alg, t, multiply(k0inv, d0));
    return HyperplaneFactorization{a, h1, h2, tau, t, d0, k0, K};
}

/// The stated invariants, re-checked from scratch.
struct HyperplaneCheck {
    bool tau_h1_zero = false;
    bool tau_h2_zero = false;
    bool product_matches = false;
    bool h2_kronecker_form = false;

    bool all() const { return tau_h1_zero && tau_h2_zero && product_matches && h2_kronecker_form; }
};

inline HyperplaneCheck check_hyperplane_factorization(const HyperplaneFactorization& hf) {
    HyperplaneCheck c;
    c.tau_h1_zero = hf.tau.apply(hf.h1).is_zero();
    c.tau_h2_zero = hf.tau.apply(hf.h2).is_zero();
    c.product_matches = multiply(hf.h1, hf.h2) == hf.a;
    c.h2_kronecker_form = member_of_t_tensor_D(hf.h2, hf.t).has_value();
    return c;
}

} // namespace commcert
