#include <catch2/catch_amalgamated.hpp>

#include "commcert/field.hpp"
#include "commcert/rng.hpp"

using namespace commcert;

TEST_CASE("rationals reduce to lowest terms with positive denominator") {
    Scalar a = Scalar::rational(3, 6);
    CHECK(a.re().get_num() == 1);
    CHECK(a.re().get_den() == 2);
    Scalar b = Scalar::rational(1, -2);
    CHECK(b.re().get_num() == -1);
    CHECK(b.re().get_den() == 2);
    CHECK(b.str() == "-1/2");
    CHECK(Scalar::rational(4, 1).str() == "4");
}

TEST_CASE("rational parsing round-trips and rejects junk") {
    CHECK(Scalar::parse_rational("22/7") == mpq_class(22, 7));
    CHECK(Scalar::parse_rational("-5") == mpq_class(-5));
    CHECK(Scalar::parse_rational("6/4") == mpq_class(3, 2));
    CHECK_THROWS_AS(Scalar::parse_rational(""), ParseError);
    CHECK_THROWS_AS(Scalar::parse_rational("1/0x"), ParseError);
    CHECK_THROWS_AS(Scalar::parse_rational("abc"), ParseError);
}

TEST_CASE("prime field construction validates the modulus") {
    CHECK(FieldDescriptor::Fp(7).p == 7);
    CHECK_THROWS_AS(FieldDescriptor::Fp(4), DomainError);
    CHECK_THROWS_AS(FieldDescriptor::Fp(1), DomainError);
    CHECK_THROWS_AS(FieldDescriptor::Fp(1ul << 31), DomainError);
}

TEST_CASE("prime field arithmetic stays in [0, p)") {
    auto f = FieldDescriptor::Fp(7);
    Scalar a = Scalar::from_int(f, -3); // = 4
    CHECK(a.res() == 4);
    Scalar b = Scalar::from_int(f, 5);
    CHECK((a + b).res() == 2);
    CHECK((a * b).res() == 6);
    CHECK((-b).res() == 2);
    CHECK((b * b.inverse()).is_one());
}

TEST_CASE("gaussian rational inverse and conjugation") {
    Scalar z = Scalar::gaussian(1, 2);
    Scalar w = z * z.inverse();
    CHECK(w.is_one());
    CHECK(z.conj().im() == mpq_class(-2));
    Scalar prod = z * z.conj(); // = 5
    CHECK(prod.re() == 5);
    CHECK(sgn(prod.im()) == 0);
}

static Scalar random_scalar(FieldDescriptor f, Rng& rng) {
    switch (f.kind) {
        case FieldKind::Rationals:
            return Scalar::rational(rng.range(-20, 20), rng.range(1, 12));
        case FieldKind::GaussianRationals:
            return Scalar::gaussian(mpq_class(rng.range(-20, 20), rng.range(1, 12)),
                                    mpq_class(rng.range(-20, 20), rng.range(1, 12)));
        case FieldKind::PrimeField:
            return Scalar::residue(f, static_cast<unsigned long>(rng.below(f.p)));
    }
    return Scalar::zero(f);
}

TEST_CASE("field axioms hold on randomized triples over all three fields") {
    for (FieldDescriptor f :
         {FieldDescriptor::Q(), FieldDescriptor::Qi(), FieldDescriptor::Fp(10007)}) {
        Rng rng(42);
        for (int trial = 0; trial < 200; ++trial) {
            Scalar x = random_scalar(f, rng);
            Scalar y = random_scalar(f, rng);
            Scalar z = random_scalar(f, rng);
            CHECK((x + y) + z == x + (y + z));
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(x * y == y * x);
            if (!x.is_zero()) CHECK((x * x.inverse()).is_one());
        }
    }
}

TEST_CASE("scalar field mismatch is rejected") {
    Scalar q = Scalar::rational(1, 2);
    Scalar g = Scalar::gaussian(1, 0);
    CHECK_THROWS_AS(q + g, FieldMismatchError);
}
