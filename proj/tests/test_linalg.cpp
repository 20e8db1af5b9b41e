#include <catch2/catch_amalgamated.hpp>

#include "commcert/algebra.hpp"
#include "commcert/linalg.hpp"
#include "commcert/rng.hpp"

using namespace commcert;

namespace {

const FieldDescriptor Q = FieldDescriptor::Q();

ExactMatrix from_rows(std::vector<std::vector<long>> rows, FieldDescriptor f = Q) {
    ExactMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), f);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m.at(r, c) = Scalar::from_int(f, rows[r][c]);
    return m;
}

Vec vec(std::vector<long> v, FieldDescriptor f = Q) {
    Vec out;
    for (long x : v) out.push_back(Scalar::from_int(f, x));
    return out;
}

bool is_zero_vec(const Vec& v) {
    for (const auto& s : v)
        if (!s.is_zero()) return false;
    return true;
}

} // namespace

TEST_CASE("kernel of a one-equation system") {
    auto ker = kernel_basis(from_rows({{1, 2}}));
    REQUIRE(ker.dim() == 1);
    CHECK(ker.vectors[0] == vec({-2, 1}));
}

TEST_CASE("kernel of the identity is trivial") {
    auto ker = kernel_basis(ExactMatrix::identity(3, Q));
    CHECK(ker.dim() == 0);
}

TEST_CASE("kernel over F7 of a random rank-4 4x8 matrix") {
    auto f = FieldDescriptor::Fp(7);
    Rng rng(7);
    ExactMatrix M(4, 8, f);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 8; ++c) M.at(r, c) = Scalar::residue(f, rng.below(7));
    REQUIRE(M.rank() == 4);
    auto ker = kernel_basis(M);
    REQUIRE(ker.dim() == 4);
    for (const auto& v : ker.vectors) CHECK(is_zero_vec(M.apply(v)));
}

TEST_CASE("solve_linear worked examples") {
    auto x = solve_linear(from_rows({{2}}), vec({3}));
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Scalar::rational(3, 2));

    CHECK(!solve_linear(from_rows({{1, 1}, {1, 1}}), vec({0, 1})).has_value());

    auto y = solve_linear(from_rows({{1, 1}, {0, 1}}), vec({2, 1}));
    REQUIRE(y.has_value());
    CHECK(*y == vec({1, 1}));
}

TEST_CASE("solve_linear round-trips on random consistent systems") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        ExactMatrix M(4, 6, Q);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 6; ++c)
                M.at(r, c) = Scalar::rational(rng.range(-9, 9), rng.range(1, 5));
        Vec x0;
        for (int c = 0; c < 6; ++c) x0.push_back(Scalar::rational(rng.range(-9, 9), rng.range(1, 5)));
        Vec b = M.apply(x0);
        auto x = solve_linear(M, b);
        REQUIRE(x.has_value());
        CHECK(M.apply(*x) == b);
    }
}

TEST_CASE("intersection of coordinate subspaces") {
    SubspaceBasis U{3, {vec({1, 0, 0}), vec({0, 1, 0})}};
    SubspaceBasis V{3, {vec({0, 1, 0}), vec({0, 0, 1})}};
    auto W = intersect_subspaces(U, V);
    REQUIRE(W.dim() == 1);
    CHECK(W.vectors[0] == vec({0, 1, 0}));
}

TEST_CASE("intersection with itself returns the same span") {
    SubspaceBasis U{4, {vec({1, 2, 0, 1}), vec({0, 1, 1, 0})}};
    auto W = intersect_subspaces(U, U);
    REQUIRE(W.dim() == 2);
    for (const auto& v : U.vectors) CHECK(in_span(W, v));
}

TEST_CASE("intersection rejects mismatched ambient dimensions") {
    SubspaceBasis U{3, {vec({1, 0, 0})}};
    SubspaceBasis V{4, {vec({1, 0, 0, 0})}};
    CHECK_THROWS_AS(intersect_subspaces(U, V), DimensionError);
}

TEST_CASE("ad_i image meets i·(pure quaternions) in the span of j and k") {
    auto H = AlgebraDescriptor::hamilton();
    AlgebraElement i = basis_element(H, 1);
    SubspaceBasis image = column_space(ad_operator(i));

    SubspaceBasis iW{4, {}};
    for (int t = 1; t < 4; ++t) iW.vectors.push_back(multiply(i, basis_element(H, t)).coords);

    auto meet = intersect_subspaces(image, iW);
    REQUIRE(meet.dim() == 2);
    CHECK(in_span(meet, basis_element(H, 2).coords));
    CHECK(in_span(meet, basis_element(H, 3).coords));
}

TEST_CASE("dimension formula dim(U∩V) + dim(U+V) = dim U + dim V") {
    Rng rng(1234);
    for (int trial = 0; trial < 40; ++trial) {
        int ambient = 5;
        auto random_subspace = [&](int gens) {
            std::vector<Vec> vs;
            for (int g = 0; g < gens; ++g) {
                Vec v;
                for (int i = 0; i < ambient; ++i) v.push_back(Scalar::from_int(Q, rng.range(-3, 3)));
                vs.push_back(std::move(v));
            }
            return canonical_basis(ambient, vs, Q);
        };
        SubspaceBasis U = random_subspace(static_cast<int>(rng.below(5)) + 1);
        SubspaceBasis V = random_subspace(static_cast<int>(rng.below(5)) + 1);
        auto meet = intersect_subspaces(U, V);
        std::vector<Vec> join = U.vectors;
        join.insert(join.end(), V.vectors.begin(), V.vectors.end());
        auto sum = canonical_basis(5, join, Q);
        CHECK(meet.dim() + sum.dim() == U.dim() + V.dim());
    }
}

TEST_CASE("adjugate satisfies adj(M)·M = det(M)·I including singular M") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3;
        ExactMatrix M(n, n, Q);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) M.at(r, c) = Scalar::from_int(Q, rng.range(-4, 4));
        if (trial % 3 == 0)
            for (int c = 0; c < n; ++c) M.at(n - 1, c) = M.at(0, c); // force singular
        ExactMatrix lhs = M.adjugate() * M;
        CHECK(lhs == ExactMatrix::identity(n, Q).scaled(M.determinant()));
    }
}

TEST_CASE("inverse round-trip and singularity detection") {
    auto M = from_rows({{1, 2}, {3, 4}});
    auto inv = M.inverse();
    REQUIRE(inv.has_value());
    CHECK((*inv * M) == ExactMatrix::identity(2, Q));
    CHECK(!from_rows({{1, 1}, {1, 1}}).inverse().has_value());
}
