#pragma once

#include "rankin/ring_traits.hpp"

#include <ostream>
#include <vector>

namespace rankin {

// Truncated power series: exact coefficients through degree T-1, everything
// above is discarded.  Operations keep the minimum precision of the operands.
template <class R>
class TruncSeries {
public:
    TruncSeries() = default;
    TruncSeries(long T, const R& exemplar) : a_((size_t)T, zero_like(exemplar)) {
        RANKIN_CHECK(T >= 1, "TruncSeries: need T >= 1");
    }
    explicit TruncSeries(std::vector<R> coeffs) : a_(std::move(coeffs)) {
        RANKIN_CHECK(!a_.empty(), "TruncSeries: need T >= 1");
    }

    long precision() const { return (long)a_.size(); }
    const R& coeff(long n) const {
        RANKIN_CHECK(n >= 0 && n < precision(), "TruncSeries: coefficient beyond precision");
        return a_[(size_t)n];
    }
    R& coeff(long n) {
        RANKIN_CHECK(n >= 0 && n < precision(), "TruncSeries: coefficient beyond precision");
        return a_[(size_t)n];
    }
    R exemplar() const { return zero_like(a_[0]); }

    TruncSeries truncate(long T) const {
        RANKIN_CHECK(T >= 1 && T <= precision(), "TruncSeries::truncate: bad target");
        return TruncSeries(std::vector<R>(a_.begin(), a_.begin() + T));
    }

    TruncSeries operator+(const TruncSeries& o) const {
        long T = std::min(precision(), o.precision());
        TruncSeries out = truncate(T);
        for (long n = 0; n < T; ++n) out.a_[(size_t)n] += o.a_[(size_t)n];
        return out;
    }
    TruncSeries operator-(const TruncSeries& o) const {
        long T = std::min(precision(), o.precision());
        TruncSeries out = truncate(T);
        for (long n = 0; n < T; ++n) out.a_[(size_t)n] -= o.a_[(size_t)n];
        return out;
    }
    TruncSeries operator-() const {
        TruncSeries out = *this;
        for (auto& x : out.a_) x = -x;
        return out;
    }
    // Cauchy product at min precision
    TruncSeries operator*(const TruncSeries& o) const {
        long T = std::min(precision(), o.precision());
        TruncSeries out(T, exemplar());
        for (long i = 0; i < T; ++i) {
            if (is_zero_elem(a_[(size_t)i])) continue;
            for (long j = 0; j + i < T; ++j) {
                if (is_zero_elem(o.a_[(size_t)j])) continue;
                out.a_[(size_t)(i + j)] += a_[(size_t)i] * o.a_[(size_t)j];
            }
        }
        return out;
    }
    TruncSeries operator*(const R& s) const {
        TruncSeries out = *this;
        for (auto& x : out.a_) x *= s;
        return out;
    }
    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    bool operator==(const TruncSeries& o) const {
        if (precision() != o.precision()) return false;
        for (long n = 0; n < precision(); ++n)
            if (!is_zero_elem(a_[(size_t)n] - o.a_[(size_t)n])) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!is_zero_elem(x)) return false;
        return true;
    }

    // multiply by q^k (shift up), staying at the same precision
    TruncSeries shift(long k) const {
        RANKIN_CHECK(k >= 0, "TruncSeries::shift: negative shift");
        TruncSeries out(precision(), exemplar());
        for (long n = 0; n + k < precision(); ++n) out.a_[(size_t)(n + k)] = a_[(size_t)n];
        return out;
    }

    TruncSeries pow(long e) const {
        RANKIN_CHECK(e >= 0, "TruncSeries::pow: negative exponent");
        TruncSeries out(precision(), exemplar());
        out.a_[0] = one_like(exemplar());
        TruncSeries base = *this;
        while (e) {
            if (e & 1) out *= base;
            base *= base;
            e >>= 1;
        }
        return out;
    }

    // multiplicative inverse; constant term must be invertible
    TruncSeries inverse() const {
        R c0 = a_[0];
        R u = invert_scalar(c0);
        TruncSeries out(precision(), exemplar());
        out.a_[0] = u;
        for (long n = 1; n < precision(); ++n) {
            R s = zero_like(c0);
            for (long k = 1; k <= n; ++k) s += a_[(size_t)k] * out.a_[(size_t)(n - k)];
            out.a_[(size_t)n] = -(u * s);
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const TruncSeries& f) {
        os << "O(q^" << f.precision() << ") + [";
        for (long n = 0; n < f.precision(); ++n) {
            if (n) os << ", ";
            os << f.a_[(size_t)n];
        }
        return os << "]";
    }

private:
    std::vector<R> a_;

    static mpq_class invert_scalar(const mpq_class& x) {
        RANKIN_CHECK(x != 0, "TruncSeries::inverse: zero constant term");
        return 1 / x;
    }
    static ZModPr invert_scalar(const ZModPr& x) { return x.inv(); }
};

template <class R>
TruncSeries<R> zero_like(const TruncSeries<R>& f) {
    return TruncSeries<R>(f.precision(), f.exemplar());
}

}  // namespace rankin
