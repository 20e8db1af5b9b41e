#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "commcert/errors.hpp"

namespace commcert {

enum class FieldKind { Rationals, GaussianRationals, PrimeField };

inline bool is_prime_u32(unsigned long p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (unsigned long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

struct FieldDescriptor {
    FieldKind kind = FieldKind::Rationals;
    unsigned long p = 0; // modulus, PrimeField only

    static FieldDescriptor Q() { return {FieldKind::Rationals, 0}; }
    static FieldDescriptor Qi() { return {FieldKind::GaussianRationals, 0}; }
    static FieldDescriptor Fp(unsigned long p) {
        if (p >= (1ul << 31) || !is_prime_u32(p))
            throw DomainError("PrimeField modulus must be a prime < 2^31");
        return {FieldKind::PrimeField, p};
    }

    bool operator==(const FieldDescriptor&) const = default;

    std::string name() const {
        switch (kind) {
            case FieldKind::Rationals: return "Q";
            case FieldKind::GaussianRationals: return "Qi";
            case FieldKind::PrimeField: return "Fp:" + std::to_string(p);
        }
        return "?";
    }
};

/// Exact field scalar. Rationals and Gaussian rationals are reduced GMP
/// fractions (positive denominator); prime-field residues live in [0, p)
/// stored in the real slot.
class Scalar {
public:
    Scalar() = default;
    explicit Scalar(FieldDescriptor f) : field_(f) {}

    static Scalar zero(FieldDescriptor f) { return Scalar(f); }
    static Scalar one(FieldDescriptor f) {
        Scalar s(f);
        s.re_ = (f.kind == FieldKind::PrimeField && f.p == 1) ? 0 : 1;
        return s;
    }

    static Scalar from_int(FieldDescriptor f, long v) {
        Scalar s(f);
        if (f.kind == FieldKind::PrimeField) {
            long r = v % static_cast<long>(f.p);
            if (r < 0) r += static_cast<long>(f.p);
            s.re_ = r;
        } else {
            s.re_ = v;
        }
        return s;
    }

    static Scalar rational(const mpq_class& q) {
        Scalar s(FieldDescriptor::Q());
        assign_canonical(s.re_, q);
        return s;
    }

    static Scalar rational(long num, long den) {
        if (den == 0) throw DomainError("zero denominator");
        Scalar s(FieldDescriptor::Q());
        mpq_ptr p = s.re_.get_mpq_t();
        mpz_set_si(mpq_numref(p), num);
        mpz_set_si(mpq_denref(p), den);
        mpq_canonicalize(p);
        return s;
    }

    static Scalar gaussian(const mpq_class& re, const mpq_class& im) {
        Scalar s(FieldDescriptor::Qi());
        assign_canonical(s.re_, re);
        assign_canonical(s.im_, im);
        return s;
    }

    static Scalar residue(FieldDescriptor f, unsigned long r) {
        Scalar s(f);
        s.re_ = static_cast<unsigned long>(r % f.p);
        return s;
    }

    const FieldDescriptor& field() const { return field_; }
    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    unsigned long res() const { return mpz_get_ui(re_.get_num().get_mpz_t()); }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    bool operator==(const Scalar& o) const {
        return field_ == o.field_ && re_ == o.re_ && im_ == o.im_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar operator-() const {
        Scalar s(field_);
        if (field_.kind == FieldKind::PrimeField) {
            unsigned long r = res();
            s.re_ = r == 0 ? 0ul : field_.p - r;
        } else {
            s.re_ = -re_;
            s.im_ = -im_;
        }
        return s;
    }

    Scalar operator+(const Scalar& o) const {
        check(o);
        Scalar s(field_);
        if (field_.kind == FieldKind::PrimeField) {
            s.re_ = (res() + o.res()) % field_.p;
        } else {
            s.re_ = re_ + o.re_;
            s.im_ = im_ + o.im_;
        }
        return s;
    }

    Scalar operator-(const Scalar& o) const { return *this + (-o); }

    Scalar operator*(const Scalar& o) const {
        check(o);
        Scalar s(field_);
        switch (field_.kind) {
            case FieldKind::Rationals:
                s.re_ = re_ * o.re_;
                break;
            case FieldKind::GaussianRationals:
                s.re_ = re_ * o.re_ - im_ * o.im_;
                s.im_ = re_ * o.im_ + im_ * o.re_;
                break;
            case FieldKind::PrimeField: {
                std::uint64_t r = (static_cast<std::uint64_t>(res()) * o.res()) % field_.p;
                s.re_ = static_cast<unsigned long>(r);
                break;
            }
        }
        return s;
    }

    /// Multiplicative inverse; zero has none.
    Scalar inverse() const {
        if (is_zero()) throw DomainError("inverse of zero scalar");
        Scalar s(field_);
        switch (field_.kind) {
            case FieldKind::Rationals:
                s.re_ = 1 / re_;
                break;
            case FieldKind::GaussianRationals: {
                mpq_class n = re_ * re_ + im_ * im_;
                s.re_ = re_ / n;
                s.im_ = -im_ / n;
                break;
            }
            case FieldKind::PrimeField: {
                mpz_class inv, v(static_cast<unsigned long>(res())), m(field_.p);
                if (mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t()) == 0)
                    throw DomainError("residue not invertible");
                s.re_ = mpq_class(inv);
                break;
            }
        }
        return s;
    }

    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    /// Complex conjugate; identity on the other fields.
    Scalar conj() const {
        Scalar s = *this;
        s.im_ = -s.im_;
        return s;
    }

    /// Total bit size of the reduced representation; the elimination
    /// pivot heuristic minimizes this.
    std::size_t height_bits() const {
        auto bits = [](const mpq_class& q) {
            return mpz_sizeinbase(q.get_num().get_mpz_t(), 2) +
                   mpz_sizeinbase(q.get_den().get_mpz_t(), 2);
        };
        std::size_t h = bits(re_);
        if (field_.kind == FieldKind::GaussianRationals) h += bits(im_);
        return h;
    }

    /// "p/q" (or "p"); prime-field residues print as plain decimals.
    /// Gaussian rationals serialize componentwise at the JSON layer.
    std::string str() const {
        if (field_.kind == FieldKind::GaussianRationals)
            return rat_str(re_) + (sgn(im_) >= 0 ? "+" : "") + rat_str(im_) + "i";
        return rat_str(re_);
    }

    static std::string rat_str(const mpq_class& q) {
        if (q.get_den() == 1) return q.get_num().get_str();
        return q.get_num().get_str() + "/" + q.get_den().get_str();
    }

    static mpq_class parse_rational(const std::string& text) {
        mpq_class q;
        if (text.empty() || mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
            throw ParseError("invalid rational literal: '" + text + "'");
        if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
            throw ParseError("zero denominator in rational literal: '" + text + "'");
        q.canonicalize();
        return q;
    }

private:
    void check(const Scalar& o) const {
        if (!(field_ == o.field_))
            throw FieldMismatchError("scalar field mismatch: " + field_.name() +
                                     " vs " + o.field_.name());
    }

    /// Copy numerator and denominator at the mpz level, then canonicalize.
    /// mpq-level copies of non-canonical values (negative denominator) are
    /// undefined per the GMP manual and crash on this libgmp build.
    static void assign_canonical(mpq_class& dst, const mpq_class& src) {
        mpq_ptr d = dst.get_mpq_t();
        mpq_srcptr s = src.get_mpq_t();
        if (mpz_sgn(mpq_denref(s)) == 0) throw DomainError("zero denominator");
        mpz_set(mpq_numref(d), mpq_numref(s));
        mpz_set(mpq_denref(d), mpq_denref(s));
        mpq_canonicalize(d);
    }

    FieldDescriptor field_{};
    mpq_class re_{0};
    mpq_class im_{0};
};

} // namespace commcert
