#pragma once

#include "rankin/zmod.hpp"

namespace rankin {

// Exemplar-based ring helpers: generic code receives a sample element and
// builds constants in the same ring (same (p, r), same cyclotomic level, ...).

inline mpz_class zero_like(const mpz_class&) { return mpz_class(0); }
inline mpz_class one_like(const mpz_class&) { return mpz_class(1); }
inline mpz_class scalar_like(const mpz_class&, const mpz_class& n) { return n; }
inline bool is_zero_elem(const mpz_class& x) { return x == 0; }

inline mpq_class zero_like(const mpq_class&) { return mpq_class(0); }
inline mpq_class one_like(const mpq_class&) { return mpq_class(1); }
inline mpq_class scalar_like(const mpq_class&, const mpz_class& n) { return mpq_class(n); }
inline bool is_zero_elem(const mpq_class& x) { return x == 0; }

inline ZModPr zero_like(const ZModPr& x) { return x.make(0); }
inline ZModPr one_like(const ZModPr& x) { return x.make(1); }
inline ZModPr scalar_like(const ZModPr& x, const mpz_class& n) { return x.make(n); }
inline bool is_zero_elem(const ZModPr& x) { return x.is_zero(); }

template <class R>
R scalar_like(const R& x, long n) {
    return scalar_like(x, mpz_class(n));
}

}  // namespace rankin
