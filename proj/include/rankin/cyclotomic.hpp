#pragma once

#include "rankin/ring_traits.hpp"

#include <map>
#include <ostream>
#include <vector>

namespace rankin {

// m-th cyclotomic polynomial over Z, computed by exact division of x^m - 1 by
// the proper-divisor cyclotomics; cached per m.
inline const std::vector<mpz_class>& cyclotomic_polynomial(long m) {
    static std::map<long, std::vector<mpz_class>> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    RANKIN_CHECK(m >= 1, "cyclotomic_polynomial: m must be positive");

    // numerator x^m - 1
    std::vector<mpz_class> num(m + 1, mpz_class(0));
    num[0] = -1;
    num[m] = 1;
    // divide by Phi_d for each proper divisor d
    for (long d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        const auto& phi_d = cyclotomic_polynomial(d);
        // exact long division num / phi_d (phi_d monic)
        long dn = (long)num.size() - 1, dd = (long)phi_d.size() - 1;
        std::vector<mpz_class> quo(dn - dd + 1, mpz_class(0));
        std::vector<mpz_class> rem = num;
        for (long i = dn - dd; i >= 0; --i) {
            mpz_class c = rem[i + dd];
            quo[i] = c;
            if (c != 0)
                for (long j = 0; j <= dd; ++j) rem[i + j] -= c * phi_d[j];
        }
        for (const auto& c : rem) RANKIN_CHECK(c == 0, "cyclotomic division not exact");
        num = std::move(quo);
    }
    return cache.emplace(m, std::move(num)).first->second;
}

// Element of R[x]/Phi_m(x), i.e. R adjoin a primitive m-th root of unity,
// held in the canonical reduced basis 1, zeta, ..., zeta^{phi(m)-1}.
template <class R>
class CycloElem {
public:
    CycloElem() : m_(0) {}
    CycloElem(long m, std::vector<R> coeffs) : m_(m), c_(std::move(coeffs)) {
        RANKIN_CHECK((long)c_.size() == euler_phi(m_), "CycloElem: wrong coefficient count");
    }
    static CycloElem scalar(long m, const R& v) {
        std::vector<R> c((size_t)euler_phi(m), zero_like(v));
        c[0] = v;
        return CycloElem(m, std::move(c));
    }
    // zeta_m^k as an element
    static CycloElem root_power(long m, long k, const R& exemplar) {
        k = ((k % m) + m) % m;
        std::vector<R> raw((size_t)k + 1, zero_like(exemplar));
        raw[(size_t)k] = one_like(exemplar);
        return from_poly(m, raw, exemplar);
    }
    // reduce an arbitrary polynomial in zeta_m
    static CycloElem from_poly(long m, std::vector<R> poly, const R& exemplar) {
        const auto& phi = cyclotomic_polynomial(m);
        long deg = (long)phi.size() - 1;
        if ((long)poly.size() < deg) poly.resize((size_t)deg, zero_like(exemplar));
        // reduce top-down using monic phi
        for (long i = (long)poly.size() - 1; i >= deg; --i) {
            R c = poly[(size_t)i];
            if (is_zero_elem(c)) continue;
            for (long j = 0; j < deg; ++j)
                poly[(size_t)(i - deg + j)] -= c * scalar_like(c, phi[(size_t)j]);
            poly[(size_t)i] = zero_like(c);
        }
        poly.resize((size_t)deg);
        return CycloElem(m, std::move(poly));
    }

    long level() const { return m_; }
    long degree() const { return (long)c_.size(); }
    const std::vector<R>& coeffs() const { return c_; }
    const R& coeff(long i) const { return c_.at((size_t)i); }
    R exemplar() const {
        RANKIN_CHECK(!c_.empty(), "CycloElem: empty");
        return zero_like(c_[0]);
    }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!is_zero_elem(x)) return false;
        return true;
    }

    CycloElem operator+(const CycloElem& o) const {
        check(o);
        CycloElem out = *this;
        for (size_t i = 0; i < c_.size(); ++i) out.c_[i] += o.c_[i];
        return out;
    }
    CycloElem operator-(const CycloElem& o) const {
        check(o);
        CycloElem out = *this;
        for (size_t i = 0; i < c_.size(); ++i) out.c_[i] -= o.c_[i];
        return out;
    }
    CycloElem operator-() const {
        CycloElem out = *this;
        for (auto& x : out.c_) x = -x;
        return out;
    }
    CycloElem operator*(const CycloElem& o) const {
        check(o);
        R z = exemplar();
        std::vector<R> prod(2 * c_.size(), z);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (is_zero_elem(c_[i])) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) {
                if (is_zero_elem(o.c_[j])) continue;
                prod[i + j] += c_[i] * o.c_[j];
            }
        }
        return from_poly(m_, std::move(prod), z);
    }
    CycloElem operator*(const R& s) const {
        CycloElem out = *this;
        for (auto& x : out.c_) x *= s;
        return out;
    }
    CycloElem& operator+=(const CycloElem& o) { return *this = *this + o; }
    CycloElem& operator-=(const CycloElem& o) { return *this = *this - o; }
    CycloElem& operator*=(const CycloElem& o) { return *this = *this * o; }

    bool operator==(const CycloElem& o) const {
        check(o);
        for (size_t i = 0; i < c_.size(); ++i)
            if (!is_zero_elem(c_[i] - o.c_[i])) return false;
        return true;
    }
    bool operator!=(const CycloElem& o) const { return !(*this == o); }

    CycloElem pow(long e) const {
        RANKIN_CHECK(e >= 0, "CycloElem::pow: negative exponent");
        CycloElem out = scalar(m_, one_like(exemplar()));
        CycloElem base = *this;
        while (e) {
            if (e & 1) out *= base;
            base *= base;
            e >>= 1;
        }
        return out;
    }

    // galois twist zeta -> zeta^s, gcd(s, m) = 1
    CycloElem galois(long s) const {
        RANKIN_CHECK(gcd_l(s, m_) == 1, "CycloElem::galois: exponent not coprime to level");
        R z = exemplar();
        std::vector<R> poly((size_t)m_, z);
        for (size_t i = 0; i < c_.size(); ++i) {
            long e = (long)((__int128)i * s % m_);
            if (e < 0) e += m_;
            poly[(size_t)e] += c_[i];
        }
        return from_poly(m_, std::move(poly), z);
    }

    friend std::ostream& operator<<(std::ostream& os, const CycloElem& x) {
        os << "[";
        for (size_t i = 0; i < x.c_.size(); ++i) {
            if (i) os << ", ";
            os << x.c_[i];
        }
        return os << "] (zeta_" << x.m_ << ")";
    }

private:
    long m_;
    std::vector<R> c_;

    void check(const CycloElem& o) const {
        RANKIN_CHECK(m_ == o.m_, "CycloElem: mixed cyclotomic levels");
    }
};

template <class R>
CycloElem<R> zero_like(const CycloElem<R>& x) {
    return CycloElem<R>::scalar(x.level(), zero_like(x.exemplar()));
}
template <class R>
CycloElem<R> one_like(const CycloElem<R>& x) {
    return CycloElem<R>::scalar(x.level(), one_like(x.exemplar()));
}
template <class R>
CycloElem<R> scalar_like(const CycloElem<R>& x, const mpz_class& n) {
    return CycloElem<R>::scalar(x.level(), scalar_like(x.exemplar(), n));
}
template <class R>
bool is_zero_elem(const CycloElem<R>& x) {
    return x.is_zero();
}

// embed Q(zeta_m) into Q(zeta_M) for m | M via zeta_m -> zeta_M^{M/m}
template <class R>
CycloElem<R> cyclo_embed(const CycloElem<R>& x, long M) {
    long m = x.level();
    RANKIN_CHECK(m >= 1 && M % m == 0, "cyclo_embed: target level not a multiple");
    if (m == M) return x;
    long s = M / m;
    R z = zero_like(x.exemplar());
    std::vector<R> poly((size_t)((x.degree() - 1) * s + 1), z);
    for (long i = 0; i < x.degree(); ++i) poly[(size_t)(i * s)] = x.coeff(i);
    return CycloElem<R>::from_poly(M, std::move(poly), z);
}

// Realization of Q(zeta_M)-values p-adically: the prime-to-p part of the root
// order must divide p-1 and maps through the Teichmueller character of the
// smallest primitive root mod p; the p-power part stays a formal root.
// Returns an element of Z/p^r adjoin zeta_{p^s}, where target_m = p^s.
inline CycloElem<ZModPr> realize_cyclo(const CycloElem<mpq_class>& x, long p, long r, long target_m) {
    long M = x.level();
    long mp = 1;  // p-part of M
    long Mtame = M;
    while (Mtame % p == 0) {
        Mtame /= p;
        mp *= p;
    }
    RANKIN_CHECK(target_m >= 1 && (target_m == 1 || target_m % p == 0 || mp == 1),
                 "realize_cyclo: target level must absorb the p-part");
    RANKIN_CHECK(target_m % mp == 0, "realize_cyclo: p-part of level does not divide target");
    RANKIN_CHECK((p - 1) % Mtame == 0, "realize_cyclo: tame root order does not divide p-1");

    ZModPr ex(p, r, 0);
    CycloElem<ZModPr> out = CycloElem<ZModPr>::scalar(target_m, ex);

    // zeta_M = zeta_Mtame^a * zeta_mp^b with a*mp + b*Mtame = 1
    long a = 0, b = 0;
    if (Mtame == 1) {
        a = 0;
        b = 1;
    } else if (mp == 1) {
        a = 1;
        b = 0;
    } else {
        a = invmod_l(mp, Mtame);
        b = invmod_l(Mtame, mp);
    }
    ZModPr tame_root = ex.make(1);
    if (Mtame > 1) {
        long g = primitive_root(p);
        tame_root = teichmuller(p, r, g).pow((p - 1) / Mtame);
    }
    for (long i = 0; i < x.degree(); ++i) {
        const mpq_class& ci = x.coeff(i);
        if (ci == 0) continue;
        // zeta_M^i -> tame_root^{i*a mod Mtame} * zeta_{target_m}^{(i*b mod mp) * target_m/mp}
        long et = Mtame > 1 ? (long)((__int128)i * a % Mtame) : 0;
        long ep = mp > 1 ? (long)((__int128)i * b % mp) : 0;
        ZModPr s = zmod_from_rational(p, r, ci) * tame_root.pow(et);
        out += CycloElem<ZModPr>::root_power(target_m, ep * (target_m / mp), ex) *
               CycloElem<ZModPr>::scalar(target_m, s);
    }
    return out;
}

}  // namespace rankin
