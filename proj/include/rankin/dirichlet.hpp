#pragma once

#include "rankin/cyclotomic.hpp"

#include <utility>
#include <vector>

namespace rankin {

long carmichael_lambda(long m);

// generators (g, order) of (Z/m)^*, CRT-lifted from prime-power parts
std::vector<std::pair<long, long>> unit_group_generators(long m);

// A Dirichlet character mod m, stored as the exponent table a -> e(a) with
// chi(a) = zeta_L^e(a), L = carmichael_lambda(m), and e(a) = -1 at non-units.
class DirichletChar {
public:
    // chi(g_i) = zeta_L^e_i for the generators returned by unit_group_generators;
    // each e_i must be a multiple of L/order(g_i)
    DirichletChar(long modulus, const std::vector<long>& gen_exponents);

    static DirichletChar trivial(long modulus);
    static std::vector<DirichletChar> all(long modulus);

    long modulus() const { return m_; }
    long table_level() const { return L_; }
    long order() const;
    long conductor() const;
    bool is_primitive() const { return conductor() == m_; }
    bool is_trivial() const { return order() == 1; }

    bool is_unit_arg(long a) const;
    long value_exponent(long a) const;  // requires gcd(a, m) = 1
    // chi(a) in Q(zeta_level); level 0 means level = order(); non-units map to 0
    CycloElem<mpq_class> value(long a, long level = 0) const;
    long parity() const;  // chi(-1)

    DirichletChar primitive_part() const;
    DirichletChar induce(long new_modulus) const;
    DirichletChar operator*(const DirichletChar& o) const;  // at lcm of moduli
    DirichletChar inverse() const;

    bool operator==(const DirichletChar& o) const { return m_ == o.m_ && table_ == o.table_; }

private:
    DirichletChar(long m, long L, std::vector<long> table);
    friend DirichletChar char_from_unit_exponents(long N, const std::vector<long>& exps);

    long m_, L_;
    std::vector<long> table_;
};

// chi mod p with chi(g) = zeta_{p-1} for the smallest primitive root g; its
// realization mod p^r is the Teichmuller lift
DirichletChar teichmuller_char(long p);

// exponents of zeta_{carmichael_lambda(N)} listed on the units mod N in
// ascending order; multiplicativity is validated
DirichletChar char_from_unit_exponents(long N, const std::vector<long>& exps);

// literal syntax: chi(N; v1,v2,...) with the unit-exponent convention above
DirichletChar parse_char_literal(const std::string& text);
std::string char_literal(const DirichletChar& chi);

CycloElem<mpq_class> gauss_sum(const DirichletChar& chi);

mpq_class bernoulli_number(long n);
mpq_class bernoulli_poly(long n, const mpq_class& x);

// sum over n >= 1, n = t mod N of n^{-s}, continued to s = -k (k >= 0)
mpq_class partial_zeta_neg(long t, long N, long k);

// sum over n >= 1, n = t mod N of eta(n) n^{-s} at s = 0, in Q(zeta_level)
CycloElem<mpq_class> twisted_partial_zeta_zero(long t, long N, const DirichletChar& eta, long level);

// L(chi, -k) in Q(zeta_level); level 0 means level = order(chi)
CycloElem<mpq_class> dirichlet_l_neg(const DirichletChar& chi, long k, long level = 0);

mpq_class cyclo_rational(const CycloElem<mpq_class>& x);

}  // namespace rankin
