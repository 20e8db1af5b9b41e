#include <catch2/catch_amalgamated.hpp>

#include "commcert/algebra.hpp"
#include "commcert/verify.hpp"

using namespace commcert;

namespace {

const FieldDescriptor Q = FieldDescriptor::Q();
const AlgebraDescriptor H = AlgebraDescriptor::hamilton();

AlgebraElement q1(const AlgebraDescriptor& a) { return basis_element(a, 0); }
AlgebraElement qi(const AlgebraDescriptor& a) { return basis_element(a, 1); }
AlgebraElement qj(const AlgebraDescriptor& a) { return basis_element(a, 2); }
AlgebraElement qk(const AlgebraDescriptor& a) { return basis_element(a, 3); }

AlgebraElement unit(const AlgebraDescriptor& a, int r, int c) {
    return basis_element(a, r * a.m + c);
}

} // namespace

TEST_CASE("quaternion defining relations") {
    CHECK(multiply(qi(H), qj(H)) == qk(H));
    CHECK(multiply(qk(H), qj(H)) == neg(qi(H)));
    CHECK(multiply(qi(H), qi(H)) == neg(q1(H)));
    CHECK(multiply(qj(H), qi(H)) == neg(qk(H)));
    // general parameters: (a,b) = (-2,-3)
    auto D = AlgebraDescriptor::quaternion(-2, -3);
    CHECK(multiply(qi(D), qi(D)) == scale(q1(D), Scalar::from_int(Q, -2)));
    CHECK(multiply(qj(D), qj(D)) == scale(q1(D), Scalar::from_int(Q, -3)));
    CHECK(multiply(qk(D), qk(D)) == scale(q1(D), Scalar::from_int(Q, -6)));
    CHECK(multiply(qi(D), qk(D)) == scale(qj(D), Scalar::from_int(Q, -2)));
}

TEST_CASE("matrix unit calculus") {
    auto M2 = AlgebraDescriptor::matrix_over_field(2);
    CHECK(multiply(unit(M2, 0, 1), unit(M2, 1, 0)) == unit(M2, 0, 0));
    CHECK(commutator(unit(M2, 0, 0), unit(M2, 0, 1)) == unit(M2, 0, 1));
}

TEST_CASE("commutator basics") {
    CHECK(commutator(qi(H), qj(H)) == scale(qk(H), Scalar::from_int(Q, 2)));
    Rng rng(3);
    for (const auto& alg :
         {H, AlgebraDescriptor::matrix_over_field(3), AlgebraDescriptor::matrix_over_quaternion(2, -1, -1)}) {
        AlgebraElement x = random_element(alg, rng, 6);
        CHECK(commutator(x, x).is_zero());
    }
}

TEST_CASE("reduced trace on all kinds") {
    auto M2 = AlgebraDescriptor::matrix_over_field(2);
    AlgebraElement x = zero_element(M2);
    x.coords = {Scalar::from_int(Q, 1), Scalar::from_int(Q, 2), Scalar::from_int(Q, 3),
                Scalar::from_int(Q, 4)};
    CHECK(reduced_trace(x) == Scalar::from_int(Q, 5));

    AlgebraElement h = quat_element(H, Scalar::from_int(Q, 3), Scalar::from_int(Q, 1),
                                    Scalar::from_int(Q, -1), Scalar::zero(Q));
    CHECK(reduced_trace(h) == Scalar::from_int(Q, 6));

    auto MH = AlgebraDescriptor::matrix_over_quaternion(2, -1, -1);
    AlgebraElement y = zero_element(MH);
    set_quat_entry(y, 0, 0, quat_entry(qi(H), 0, 0));
    set_quat_entry(y, 1, 1, quat_entry(qj(H), 0, 0));
    CHECK(reduced_trace(y).is_zero());
}

TEST_CASE("reduced trace of the identity is m·n") {
    CHECK(reduced_trace(one_element(AlgebraDescriptor::matrix_over_field(3))) ==
          Scalar::from_int(Q, 3));
    CHECK(reduced_trace(one_element(H)) == Scalar::from_int(Q, 2));
    CHECK(reduced_trace(one_element(AlgebraDescriptor::matrix_over_quaternion(2, -1, -1))) ==
          Scalar::from_int(Q, 4));
}

TEST_CASE("inverse worked examples") {
    AlgebraElement x = add(q1(H), qi(H)); // 1 + i
    auto inv = inverse(x);
    REQUIRE(inv.has_value());
    CHECK(*inv == quat_element(H, Scalar::rational(1, 2), Scalar::rational(-1, 2), Scalar::zero(Q),
                               Scalar::zero(Q)));
    CHECK(multiply(x, *inv) == one_element(H));

    auto M2 = AlgebraDescriptor::matrix_over_field(2);
    CHECK(!inverse(unit(M2, 0, 0)).has_value());

    Rng rng(11);
    auto M3 = AlgebraDescriptor::matrix_over_field(3);
    for (int trial = 0; trial < 20; ++trial) {
        AlgebraElement a = random_element(M3, rng, 9);
        auto ainv = inverse(a);
        if (!ainv) continue;
        CHECK(multiply(a, *ainv) == one_element(M3));
        CHECK(multiply(*ainv, a) == one_element(M3));
    }
}

TEST_CASE("nonzero elements of a definite quaternion algebra are invertible") {
    Rng rng(17);
    for (const auto& D : {H, AlgebraDescriptor::quaternion(-2, -5)}) {
        for (int trial = 0; trial < 50; ++trial) {
            AlgebraElement x = random_element(D, rng, 10);
            if (x.is_zero()) continue;
            Scalar n = detail::quat_norm(quat_entry(x, 0, 0), D.qa, D.qb, Q);
            CHECK(sgn(n.re()) > 0);
            auto inv = inverse(x);
            REQUIRE(inv.has_value());
            CHECK(multiply(x, *inv) == one_element(D));
        }
    }
}

TEST_CASE("inverse via the left-regular representation for quaternionic matrices") {
    auto MH = AlgebraDescriptor::matrix_over_quaternion(2, -1, -1);
    Rng rng(23);
    int seen = 0;
    for (int trial = 0; trial < 10; ++trial) {
        AlgebraElement a = random_element(MH, rng, 5);
        auto ainv = inverse(a);
        if (!ainv) continue;
        ++seen;
        CHECK(multiply(a, *ainv) == one_element(MH));
        CHECK(multiply(*ainv, a) == one_element(MH));
    }
    CHECK(seen > 0);
}

TEST_CASE("ad operator kernels and images") {
    ExactMatrix ad_i = ad_operator(qi(H));
    auto ker = kernel_basis(ad_i);
    REQUIRE(ker.dim() == 2);
    CHECK(in_span(ker, q1(H).coords));
    CHECK(in_span(ker, qi(H).coords));
    auto img = column_space(ad_i);
    REQUIRE(img.dim() == 2);
    CHECK(in_span(img, qj(H).coords));
    CHECK(in_span(img, qk(H).coords));

    CHECK(ad_operator(one_element(H)).is_zero());

    auto M2 = AlgebraDescriptor::matrix_over_field(2);
    auto img2 = column_space(ad_operator(unit(M2, 0, 0)));
    REQUIRE(img2.dim() == 2);
    CHECK(in_span(img2, unit(M2, 0, 1).coords));
    CHECK(in_span(img2, unit(M2, 1, 0).coords));
}

TEST_CASE("kernel of ad_u has dimension n for a maximal-subfield generator") {
    AlgebraElement u = add(qi(H), scale(qj(H), Scalar::from_int(Q, 2)));
    ExactMatrix ad_u = ad_operator(u);
    CHECK(kernel_basis(ad_u).dim() == 2);
    CHECK(column_space(ad_u).dim() == 2); // n^2 - n with n = 2
}

TEST_CASE("kronecker embedding") {
    auto MH = AlgebraDescriptor::matrix_over_quaternion(2, -1, -1);
    ExactMatrix I2 = ExactMatrix::identity(2, Q);
    CHECK(kronecker_embed(I2, q1(H), MH) == one_element(MH));

    ExactMatrix t(2, 2, Q);
    t.at(0, 1) = Scalar::one(Q);
    AlgebraElement e = kronecker_embed(t, qj(H), MH);
    AlgebraElement expect = zero_element(MH);
    set_quat_entry(expect, 0, 1, quat_entry(qj(H), 0, 0));
    CHECK(e == expect);

    Rng rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        ExactMatrix t1(2, 2, Q), t2(2, 2, Q);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                t1.at(r, c) = Scalar::from_int(Q, rng.range(-5, 5));
                t2.at(r, c) = Scalar::from_int(Q, rng.range(-5, 5));
            }
        AlgebraElement d1 = random_element(H, rng, 5);
        AlgebraElement d2 = random_element(H, rng, 5);
        CHECK(multiply(kronecker_embed(t1, d1, MH), kronecker_embed(t2, d2, MH)) ==
              kronecker_embed(t1 * t2, multiply(d1, d2), MH));
    }
}

TEST_CASE("centrality and field detection") {
    CHECK(is_central(scale(one_element(H), Scalar::from_int(Q, 5))));
    CHECK(!is_central(qi(H)));
    CHECK(is_field(AlgebraDescriptor::matrix_over_field(1)));
    CHECK(!is_field(AlgebraDescriptor::matrix_over_field(2)));
    CHECK(!is_field(H));
}

TEST_CASE("subfield containing an element") {
    AlgebraElement d = add(qi(H), qj(H));
    auto [L, u] = subfield_containing(d);
    REQUIRE(L.elements.size() == 2);
    CHECK(L.elements[0] == one_element(H));
    CHECK(L.elements[1] == d);
    CHECK(u == d);

    auto [Lc, uc] = subfield_containing(scale(one_element(H), Scalar::from_int(Q, 7)));
    CHECK(uc == qi(H));

    // u^2 lies in F·1 + F·u
    ExactMatrix basis2(4, 2, Q);
    for (int i = 0; i < 4; ++i) {
        basis2.at(i, 0) = one_element(H).coords[i];
        basis2.at(i, 1) = u.coords[i];
    }
    CHECK(solve_linear(basis2, multiply(u, u).coords).has_value());
}

TEST_CASE("associativity on randomized triples in all kinds") {
    Rng rng(31);
    for (const auto& alg :
         {H, AlgebraDescriptor::quaternion(-3, -7), AlgebraDescriptor::matrix_over_field(3),
          AlgebraDescriptor::matrix_over_quaternion(2, -1, -2)}) {
        for (int trial = 0; trial < 15; ++trial) {
            AlgebraElement x = random_element(alg, rng, 5);
            AlgebraElement y = random_element(alg, rng, 5);
            AlgebraElement z = random_element(alg, rng, 5);
            CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
        }
    }
}

TEST_CASE("commutators land in the trace-zero hyperplane") {
    Rng rng(37);
    for (const auto& alg :
         {H, AlgebraDescriptor::matrix_over_field(2), AlgebraDescriptor::matrix_over_field(3),
          AlgebraDescriptor::matrix_over_quaternion(2, -1, -1)}) {
        for (int trial = 0; trial < 25; ++trial) {
            AlgebraElement x = random_element(alg, rng, 8);
            AlgebraElement y = random_element(alg, rng, 8);
            CHECK(reduced_trace(commutator(x, y)).is_zero());
        }
    }
}

TEST_CASE("regular representation is multiplicative in every kind") {
    Rng rng(41);
    for (const auto& alg :
         {H, AlgebraDescriptor::quaternion(-2, -3), AlgebraDescriptor::matrix_over_field(3),
          AlgebraDescriptor::matrix_over_quaternion(2, -1, -1)}) {
        for (int trial = 0; trial < 10; ++trial) {
            AlgebraElement x = random_element(alg, rng, 5);
            AlgebraElement y = random_element(alg, rng, 5);
            CHECK(regular_rep(multiply(x, y)) == regular_rep(x) * regular_rep(y));
            CHECK(regular_rep(add(x, y)) == regular_rep(x) + regular_rep(y));
        }
    }
}

TEST_CASE("descriptor validation") {
    CHECK_THROWS_AS(AlgebraDescriptor::quaternion(1, -1), DomainError);
    CHECK_THROWS_AS(AlgebraDescriptor::matrix_over_field(0), DomainError);
    auto M2 = AlgebraDescriptor::matrix_over_field(2);
    CHECK_THROWS_AS(multiply(one_element(M2), one_element(H)), DomainError);
}
