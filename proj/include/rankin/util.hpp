#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankin {

[[noreturn]] inline void fail(const std::string& msg) {
    throw std::runtime_error(msg);
}

#define RANKIN_CHECK(cond, msg) \
    do {                        \
        if (!(cond)) ::rankin::fail(msg); \
    } while (0)

inline mpz_class pow_z(const mpz_class& base, unsigned long e) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

inline mpz_class pow_z(long base, unsigned long e) { return pow_z(mpz_class(base), e); }

inline mpz_class powmod(const mpz_class& base, const mpz_class& e, const mpz_class& mod) {
    mpz_class out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
    return out;
}

inline long gcd_l(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline long lcm_l(long a, long b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_l(a, b) * b;
}

// smallest nonnegative x with x*a = g mod m style helper: inverse of a mod m, unit required
inline long invmod_l(long a, long m) {
    RANKIN_CHECK(m > 0, "invmod: modulus must be positive");
    long r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
    while (r1 != 0) {
        long q = r0 / r1;
        long r2 = r0 - q * r1;
        long s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    RANKIN_CHECK(r0 == 1, "invmod: argument is not a unit");
    return ((s0 % m) + m) % m;
}

inline long powmod_l(long base, long e, long m) {
    RANKIN_CHECK(e >= 0 && m > 0, "powmod_l: bad arguments");
    long b = ((base % m) + m) % m, out = 1 % m;
    while (e) {
        if (e & 1) out = (long)((__int128)out * b % m);
        b = (long)((__int128)b * b % m);
        e >>= 1;
    }
    return out;
}

inline bool is_prime_l(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline long euler_phi(long n) {
    RANKIN_CHECK(n >= 1, "euler_phi: n must be positive");
    long out = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out -= out / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out -= out / n;
    return out;
}

inline std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// multiplicative order of a modulo m (a must be a unit)
inline long mult_order(long a, long m) {
    RANKIN_CHECK(gcd_l(a, m) == 1, "mult_order: not a unit");
    long x = ((a % m) + m) % m, ord = 1;
    long cur = x % m;
    while (cur != 1 % m) {
        cur = (long)((__int128)cur * x % m);
        ++ord;
        RANKIN_CHECK(ord <= m, "mult_order: runaway");
    }
    return ord;
}

// smallest primitive root modulo m, for m with cyclic unit group
inline long primitive_root(long m) {
    long phi = euler_phi(m);
    auto fac = prime_factors(phi);
    for (long g = 2; g < m; ++g) {
        if (gcd_l(g, m) != 1) continue;
        bool ok = true;
        for (long q : fac)
            if (powmod_l(g, phi / q, m) == 1) { ok = false; break; }
        if (ok) return g;
    }
    fail("primitive_root: unit group not cyclic or m too small");
}

inline mpz_class binomial_z(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), (unsigned long)n, (unsigned long)k);
    return out;
}

inline mpz_class factorial_z(long n) {
    RANKIN_CHECK(n >= 0, "factorial of negative argument");
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), (unsigned long)n);
    return out;
}

// exponent of p in n, with padic_valuation(0) reported as huge sentinel
inline long padic_valuation(const mpz_class& n, long p) {
    RANKIN_CHECK(p >= 2, "padic_valuation: p must be >= 2");
    if (n == 0) return LONG_MAX / 2;
    mpz_class a = abs(n), q, r;
    long v = 0;
    mpz_class pz(p);
    while (true) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), pz.get_mpz_t());
        if (r != 0) break;
        a = q;
        ++v;
    }
    return v;
}

inline long padic_valuation(const mpq_class& x, long p) {
    if (x == 0) return LONG_MAX / 2;
    return padic_valuation(x.get_num(), p) - padic_valuation(x.get_den(), p);
}

// deterministic xorshift64 generator for reproducible randomized tests
struct XorShift64 {
    std::uint64_t s;
    explicit XorShift64(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    long range(long lo, long hi) { return lo + (long)below((std::uint64_t)(hi - lo + 1)); }
};

}  // namespace rankin
