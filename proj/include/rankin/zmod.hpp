#pragma once

#include "rankin/util.hpp"

#include <compare>
#include <ostream>

namespace rankin {

// Scalar in Z/p^r with the pair (p, r) carried explicitly.  Elements of
// different precision never mix silently; reduce_precision is the only way
// down.
class ZModPr {
public:
    ZModPr() : p_(0), r_(0), pr_(1), v_(0) {}
    ZModPr(long p, long r, const mpz_class& v) : p_(p), r_(r), pr_(pow_z(p, (unsigned long)r)) {
        RANKIN_CHECK(p >= 2 && r >= 1, "ZModPr: need p >= 2, r >= 1");
        v_ = v % pr_;
        if (v_ < 0) v_ += pr_;
    }
    ZModPr(long p, long r, long v) : ZModPr(p, r, mpz_class(v)) {}

    long p() const { return p_; }
    long r() const { return r_; }
    const mpz_class& modulus() const { return pr_; }
    const mpz_class& lift() const { return v_; }  // canonical lift in [0, p^r)

    bool same_ring(const ZModPr& o) const { return p_ == o.p_ && r_ == o.r_; }

    ZModPr make(const mpz_class& v) const {
        RANKIN_CHECK(p_ != 0, "ZModPr: uninitialized exemplar");
        return ZModPr(p_, r_, v);
    }

    ZModPr operator+(const ZModPr& o) const {
        check(o);
        mpz_class s = v_ + o.v_;
        if (s >= pr_) s -= pr_;
        return raw(s);
    }
    ZModPr operator-(const ZModPr& o) const {
        check(o);
        mpz_class s = v_ - o.v_;
        if (s < 0) s += pr_;
        return raw(s);
    }
    ZModPr operator*(const ZModPr& o) const {
        check(o);
        return raw(v_ * o.v_ % pr_);
    }
    ZModPr operator-() const {
        if (v_ == 0) return *this;
        return raw(pr_ - v_);
    }
    ZModPr& operator+=(const ZModPr& o) { return *this = *this + o; }
    ZModPr& operator-=(const ZModPr& o) { return *this = *this - o; }
    ZModPr& operator*=(const ZModPr& o) { return *this = *this * o; }

    bool operator==(const ZModPr& o) const {
        check(o);
        return v_ == o.v_;
    }
    bool operator!=(const ZModPr& o) const { return !(*this == o); }

    bool is_zero() const { return v_ == 0; }
    bool is_unit() const { return v_ % p_ != 0; }

    // exponent of p dividing the canonical lift, capped at r
    long valuation() const {
        if (v_ == 0) return r_;
        long v = padic_valuation(v_, p_);
        return v > r_ ? r_ : v;
    }

    ZModPr inv() const {
        RANKIN_CHECK(is_unit(), "ZModPr::inv: not a unit");
        mpz_class out;
        int ok = mpz_invert(out.get_mpz_t(), v_.get_mpz_t(), pr_.get_mpz_t());
        RANKIN_CHECK(ok != 0, "ZModPr::inv: inversion failed");
        return raw(out);
    }

    ZModPr pow(const mpz_class& e) const {
        if (e >= 0) return raw(powmod(v_, e, pr_));
        return inv().pow(-e);
    }
    ZModPr pow(long e) const { return pow(mpz_class(e)); }

    // exact division by p^k: requires p^k | lift
    ZModPr divide_by_p_pow(long k) const {
        RANKIN_CHECK(k >= 0 && k <= r_, "divide_by_p_pow: bad exponent");
        mpz_class pk = pow_z(p_, (unsigned long)k);
        RANKIN_CHECK(v_ % pk == 0, "divide_by_p_pow: not divisible");
        // result is only well defined mod p^{r-k}; keep ring precision but
        // callers relying on the top digits must reduce explicitly
        return raw(v_ / pk);
    }

    ZModPr reduce_precision(long r2) const {
        RANKIN_CHECK(r2 >= 1 && r2 <= r_, "reduce_precision: target out of range");
        return ZModPr(p_, r2, v_);
    }

    friend std::ostream& operator<<(std::ostream& os, const ZModPr& x) {
        return os << x.v_ << " mod " << x.p_ << "^" << x.r_;
    }

private:
    long p_, r_;
    mpz_class pr_, v_;

    void check(const ZModPr& o) const {
        RANKIN_CHECK(same_ring(o), "ZModPr: mixed (p, r) operands");
    }
    ZModPr raw(mpz_class v) const {
        ZModPr out;
        out.p_ = p_;
        out.r_ = r_;
        out.pr_ = pr_;
        out.v_ = std::move(v);
        return out;
    }
};

inline ZModPr zmod_from_rational(long p, long r, const mpq_class& x) {
    ZModPr num(p, r, x.get_num());
    ZModPr den(p, r, x.get_den());
    RANKIN_CHECK(den.is_unit(), "zmod_from_rational: denominator divisible by p");
    return num * den.inv();
}

// Teichmueller lift: omega(a) = a^{p^{r-1}} mod p^r
inline ZModPr teichmuller(long p, long r, const mpz_class& a) {
    ZModPr x(p, r, a);
    RANKIN_CHECK(x.is_unit(), "teichmuller: argument not a unit mod p");
    return x.pow(pow_z(p, (unsigned long)(r - 1)));
}

// p^{val} * unit with the unit part tracked in Z/p^r; supports negative
// valuations, so inverse roots and p-power denominators stay exact.
class PadicScalar {
public:
    PadicScalar() : zero_(true), val_(0) {}
    PadicScalar(long val, const ZModPr& unit) : zero_(false), val_(val), unit_(unit) {
        RANKIN_CHECK(unit.is_unit(), "PadicScalar: unit part must be a unit");
    }

    static PadicScalar zero() { return PadicScalar(); }
    static PadicScalar from_zmod(const ZModPr& x) {
        if (x.is_zero()) return PadicScalar();
        long v = x.valuation();
        return PadicScalar(v, x.divide_by_p_pow(v));
    }
    static PadicScalar from_rational(long p, long r, const mpq_class& x) {
        if (x == 0) return PadicScalar();
        long v = padic_valuation(x, p);
        mpq_class u = x / pow_q(p, v);
        return PadicScalar(v, zmod_from_rational(p, r, u));
    }

    bool is_zero() const { return zero_; }
    long val() const {
        RANKIN_CHECK(!zero_, "PadicScalar::val of zero");
        return val_;
    }
    const ZModPr& unit() const {
        RANKIN_CHECK(!zero_, "PadicScalar::unit of zero");
        return unit_;
    }

    PadicScalar operator*(const PadicScalar& o) const {
        if (zero_ || o.zero_) return PadicScalar();
        return PadicScalar(val_ + o.val_, unit_ * o.unit_);
    }
    PadicScalar operator/(const PadicScalar& o) const {
        RANKIN_CHECK(!o.zero_, "PadicScalar: division by zero");
        if (zero_) return PadicScalar();
        return PadicScalar(val_ - o.val_, unit_ * o.unit_.inv());
    }
    PadicScalar operator-() const {
        if (zero_) return *this;
        return PadicScalar(val_, -unit_);
    }
    // addition renormalizes; cancellation below the working precision maps to 0
    PadicScalar operator+(const PadicScalar& o) const {
        if (zero_) return o;
        if (o.zero_) return *this;
        RANKIN_CHECK(unit_.same_ring(o.unit_), "PadicScalar: mixed rings");
        long v = std::min(val_, o.val_);
        long p = unit_.p(), r = unit_.r();
        RANKIN_CHECK(val_ - v < r && o.val_ - v < r, "PadicScalar: addition spread exceeds precision");
        ZModPr a = unit_ * ZModPr(p, r, pow_z(p, (unsigned long)(val_ - v)));
        ZModPr b = o.unit_ * ZModPr(p, r, pow_z(p, (unsigned long)(o.val_ - v)));
        ZModPr s = a + b;
        if (s.is_zero()) return PadicScalar();
        long w = s.valuation();
        return PadicScalar(v + w, s.divide_by_p_pow(w));
    }
    PadicScalar operator-(const PadicScalar& o) const { return *this + (-o); }

    PadicScalar pow(long e) const {
        if (zero_) {
            RANKIN_CHECK(e > 0, "PadicScalar: 0^e with e <= 0");
            return PadicScalar();
        }
        return PadicScalar(val_ * e, unit_.pow(e));
    }

    bool operator==(const PadicScalar& o) const {
        if (zero_ || o.zero_) return zero_ == o.zero_;
        return val_ == o.val_ && unit_ == o.unit_;
    }

    friend std::ostream& operator<<(std::ostream& os, const PadicScalar& x) {
        if (x.zero_) return os << "0";
        return os << x.unit_.p() << "^" << x.val_ << " * (" << x.unit_ << ")";
    }

private:
    bool zero_;
    long val_;
    ZModPr unit_;

    static mpq_class pow_q(long p, long v) {
        mpq_class out = 1;
        mpq_class base = v >= 0 ? mpq_class(p) : mpq_class(1, p);
        long n = v >= 0 ? v : -v;
        for (long i = 0; i < n; ++i) out *= base;
        return out;
    }
};

}  // namespace rankin
