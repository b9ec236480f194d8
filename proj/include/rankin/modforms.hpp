#pragma once

#include "rankin/cyclotomic.hpp"
#include "rankin/dirichlet.hpp"
#include "rankin/iwasawa.hpp"
#include "rankin/matrix_ring.hpp"
#include "rankin/ring_traits.hpp"
#include "rankin/trunc_series.hpp"
#include "rankin/util.hpp"
#include "rankin/zmod.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace rankin {

// Truncated q-expansion of a modular form together with the level, weight and
// nebentypus that the Hecke action needs.  The coefficient ring is generic;
// character values land in it through coefficient_from_cyclo below.
template <class R>
struct ModularFormQExp {
    long level;
    long weight;
    DirichletChar eps;
    TruncSeries<R> coeffs;

    ModularFormQExp(long level_, long weight_, DirichletChar eps_, TruncSeries<R> coeffs_)
        : level(level_), weight(weight_), eps(std::move(eps_)), coeffs(std::move(coeffs_)) {
        RANKIN_CHECK(level >= 1 && weight >= 1, "ModularFormQExp: bad level or weight");
        RANKIN_CHECK(level % eps.modulus() == 0,
                     "ModularFormQExp: nebentypus modulus must divide the level");
        RANKIN_CHECK(coeffs.precision() >= 1, "ModularFormQExp: empty q-expansion");
    }

    long precision() const { return coeffs.precision(); }
    const R& an(long n) const { return coeffs.coeff(n); }
};

// Rational-valued characters embed into any coefficient ring; honest roots of
// unity need a cyclotomic one whose level their order divides.
inline mpq_class coefficient_from_cyclo(const mpq_class&, const CycQ& v) {
    return cyclo_rational(v);
}
inline ZModPr coefficient_from_cyclo(const ZModPr& ex, const CycQ& v) {
    return zmod_from_rational(ex.p(), ex.r(), cyclo_rational(v));
}
inline CycQ coefficient_from_cyclo(const CycQ& ex, const CycQ& v) {
    return cyclo_embed(v, ex.level());
}

// Raw coefficient shifts a_n -> a_{n ell} and a_n -> a_{n/ell}; the level
// bookkeeping sits in the named Hecke wrappers.  The first loses precision
// down to ceil(T / ell), the second keeps it.
template <class R>
TruncSeries<R> qexp_u(const TruncSeries<R>& a, long ell) {
    RANKIN_CHECK(ell >= 1, "qexp_u: bad index");
    long To = (a.precision() - 1) / ell + 1;
    std::vector<R> c;
    c.reserve((size_t)To);
    for (long n = 0; n < To; ++n) c.push_back(a.coeff(n * ell));
    return TruncSeries<R>(std::move(c));
}

template <class R>
TruncSeries<R> qexp_v(const TruncSeries<R>& a, long ell) {
    RANKIN_CHECK(ell >= 1, "qexp_v: bad index");
    std::vector<R> c((size_t)a.precision(), a.exemplar());
    for (long n = 0; n * ell < a.precision(); ++n) c[(size_t)(n * ell)] = a.coeff(n);
    return TruncSeries<R>(std::move(c));
}

// U_ell for a prime ell dividing the level
template <class R>
ModularFormQExp<R> hecke_u(const ModularFormQExp<R>& f, long ell) {
    RANKIN_CHECK(is_prime_l(ell) && f.level % ell == 0,
                 "hecke_u: ell must be a prime dividing the level");
    return ModularFormQExp<R>(f.level, f.weight, f.eps, qexp_u(f.coeffs, ell));
}

// V_ell: q -> q^ell, raising the level to N ell
template <class R>
ModularFormQExp<R> hecke_v(const ModularFormQExp<R>& f, long ell) {
    RANKIN_CHECK(is_prime_l(ell), "hecke_v: ell must be prime");
    return ModularFormQExp<R>(f.level * ell, f.weight, f.eps, qexp_v(f.coeffs, ell));
}

// the diamond operator, acting through the declared nebentypus
template <class R>
ModularFormQExp<R> diamond(const ModularFormQExp<R>& f, long d) {
    RANKIN_CHECK(gcd_l(d, f.level) == 1, "diamond: d must be a unit at the level");
    R s = coefficient_from_cyclo(f.coeffs.exemplar(), f.eps.value(d));
    return ModularFormQExp<R>(f.level, f.weight, f.eps, f.coeffs * s);
}

// T_ell away from the level: a_n -> a_{n ell} + eps(ell) ell^{w-1} a_{n/ell}
template <class R>
ModularFormQExp<R> hecke_t(const ModularFormQExp<R>& f, long ell) {
    RANKIN_CHECK(is_prime_l(ell) && f.level % ell != 0,
                 "hecke_t: ell must be a prime away from the level");
    R s = coefficient_from_cyclo(f.coeffs.exemplar(), f.eps.value(ell));
    s = s * scalar_like(f.coeffs.exemplar(), pow_z(ell, f.weight - 1));
    return ModularFormQExp<R>(f.level, f.weight, f.eps, qexp_u(f.coeffs, ell) + qexp_v(f.coeffs, ell) * s);
}

// the alpha-stabilisation f - beta V_p f at level N p
template <class R>
ModularFormQExp<R> stabilize(const ModularFormQExp<R>& f, long p, const R& beta) {
    RANKIN_CHECK(is_prime_l(p) && f.level % p != 0, "stabilize: p must be a prime away from the level");
    return ModularFormQExp<R>(f.level * p, f.weight, f.eps, f.coeffs - qexp_v(f.coeffs, p) * beta);
}

// sum_{uv = n, u = t mod N} chi1(u) chi2(v) v^{k-1} in Q(zeta_level)
CycQ eisenstein_divisor_sum(long k, long t, long N, const DirichletChar& chi1,
                            const DirichletChar& chi2, long n, long level);

// Weight-k Eisenstein series attached to a residue class t mod N and a pair
// of characters: a_n = sigma_{k-1}(t, n) + sign * sigma_{k-1}(-t, n) with
// sign = (-1)^k chi1(-1) chi2(-1), at level N cond(chi1) cond(chi2).  The
// constant term is 0 when both characters are nontrivial and a partial zeta
// value when k = 1 and chi2 is trivial; no other combination is defined.
// level = 0 picks the smallest cyclotomic coefficient field.
ModularFormQExp<CycQ> eisenstein_qexp(long k, long t, long N, const DirichletChar& chi1,
                                      const DirichletChar& chi2, long T, long level = 0);

// q-expansion whose coefficients live in the group algebra of two copies of
// (Z/p^{m+1})^*: the first factor carries the weight variable, the second the
// cyclotomic twist variable.  Specialising the twist at k + 1 + chi and the
// weight at k + eps recovers classical Eisenstein series; the naturality
// check below exercises this on a grid.
struct LambdaAdicEisenstein {
    long p, m;
    long N;              // tame conductor of the residue condition
    long t;              // residue class mod N
    DirichletChar nu;    // the fixed twist character
    long smoothing;      // the auxiliary unit c or d, 0 when unsmoothed
    std::vector<IwasawaTensorElem> coeffs;

    long precision() const { return (long)coeffs.size(); }
    const IwasawaTensorElem& an(long n) const {
        RANKIN_CHECK(n >= 0 && n < precision(), "LambdaAdicEisenstein: coefficient beyond precision");
        return coeffs[(size_t)n];
    }
};

// The weight-variable family at residue 0 mod N: the q^n coefficient for
// p coprime to n collects 2 nu^{-1}(u) v^{-1} [(1, v)] over uv = n with
// u = 0 mod N, and every other coefficient vanishes.
LambdaAdicEisenstein lambda_adic_g0(long p, long m, long N, const DirichletChar& nu, long T);

// multiplication by c^2 [(1,1)] - nu(c) [(1,c)], the c-regularisation
LambdaAdicEisenstein lambda_adic_g0_smoothed(long p, long m, long N, const DirichletChar& nu,
                                             long c, long T);

// The twist-variable family at residue t mod N, d-regularised.  The q^n
// coefficient collects u nu(u) [(u, u^{-1})] over uv = n with u = t mod N and
// p coprime to u, plus the nu(-1) [(-1,-1)] mirror at -t; the constant term
// pairs the regularised zeta measure of the class into the group algebra.
// Requires d > 1 coprime to 6 p N.
LambdaAdicEisenstein lambda_adic_g1(long p, long m, long N, long t, const DirichletChar& nu,
                                    long d, long T);

// evaluate a two-variable coefficient at weight k + eps and twist k + 1 + chi
CycQ specialize_weight_twist(const IwasawaTensorElem& a, long k, const DirichletChar& eps,
                             const DirichletChar& chi, long level);
CycloElem<ZModPr> specialize_weight_twist_zmod(const IwasawaTensorElem& a, long k,
                                               const DirichletChar& eps, const DirichletChar& chi,
                                               long level, long r);

struct EisNaturalityOptions {
    long p = 5;
    long m = 3;            // group modulus p^{m+1}
    long r = 4;            // comparison precision; exactness needs r <= m+1
    long N = 1;
    long T = 50;
    long c = 2;
    long d = 7;
    long max_k = 2;
    long chi_modulus = 25;  // twist characters run over the nontrivial ones here
    bool perturb = false;   // mis-regularise the classical side; must be caught
};

struct EisNaturalityReport {
    long weight_points = 0;   // (nu, chi, k) triples compared against the weight family
    long twist_points = 0;    // (nu, eps, chi, k) tuples compared against the twist family
    long coefficients = 0;    // individual q-coefficients compared
    bool ok = true;
};

// Specialisation naturality of the two-variable family: at every admissible
// grid point the weight family collapses to the c-regularised classical
// Eisenstein series and the twist family to the d-regularised weight-one
// series, coefficientwise in Z[zeta] tensor Z/p^r.  The weight comparison
// needs the parity condition chi(-1) nu(-1) = (-1)^{k+1}; the twist
// comparison needs eps nu chi^{-1} nontrivial and has content when that
// character is odd.
EisNaturalityReport eisenstein_naturality_check(const EisNaturalityOptions& opt);

struct OrdinaryProjection {
    Matrix<ZModPr> u;   // U_p on the given basis
    Matrix<ZModPr> e;   // the ordinary idempotent
    long rank = 0;      // unit pivots in the Smith form of e
    std::vector<TruncSeries<ZModPr>> image;  // e applied to each basis expansion
};

// Represents U_p on the span of the given expansions by exact linear algebra
// mod p^r, then forms the idempotent that is the identity on the unit-
// eigenvalue part and kills the topologically nilpotent part: a power of U_p
// whose exponent clears both the nilpotent depth and the order of the
// invertible quotient.  Fails if the span is not U_p-stable through the
// available precision or does not pin the matrix down uniquely.
OrdinaryProjection ordinary_projector(const std::vector<ModularFormQExp<ZModPr>>& basis, long p);

// Unit root of X^2 - ap X + eps_p p^{w-1} mod p^r by Hensel lifting from the
// reduction X (X - ap) mod p; requires ap to be a unit at p.
ZModPr hecke_unit_root(long p, long r, const mpz_class& ap, const mpz_class& eps_p, long w);

// Pushforwards and pullbacks along the two degeneracy maps between level N
// and level N p, as matrices on the basis (f(q), f(q^p)) of the p-old span of
// an eigenform f with T_p f = ap f.  The composites reproduce a_p and
// p^{w-2} (p+1), and the alpha-projection collapses the second pullback to
// the unit alpha - beta/p.
struct PStabilization {
    long p, w;
    Matrix<mpq_class> pr1_push, pr2_push;  // 1 x 2
    Matrix<mpq_class> pr1_pull, pr2_pull;  // 2 x 1
    ZModPr alpha, beta;
    ZModPr collapse;  // alpha - beta/p, carried at precision r - 1
};

PStabilization stabilization_maps(long p, long w, long r, const mpz_class& ap, long eps_p);

// Exact q-expansion data in a line-oriented file: a label / weight / level /
// char header followed by "an <n> <num>/<den>" lines.  Parsing is strict;
// malformed or duplicate lines report the offending line numbers.
struct NewformData {
    std::string label;
    long weight = 0;
    long level = 0;
    long char_modulus = 1;
    std::vector<long> char_exponents;
    std::map<long, mpq_class> an;

    DirichletChar nebentypus() const;
    long max_index() const { return an.empty() ? 0 : an.rbegin()->first; }
};

NewformData load_newform(const std::string& path);
std::string emit_newform(const NewformData& f);

// the first T coefficients (with a_0 = 0) in an exact coefficient ring;
// every index up to T must be present in the file
ModularFormQExp<mpq_class> newform_qexp(const NewformData& f, long T);
ModularFormQExp<ZModPr> newform_qexp_zmod(const NewformData& f, long p, long r, long T);

// Class of an integer matrix of positive determinant normalising the level-N
// congruence structure, taken modulo the structure group and scalars.  The
// stored representative is primitive; equality tests membership of g adj(h)
// in the structure group up to sign.
class ALGroupElem {
public:
    ALGroupElem(long N, Matrix<mpz_class> g);

    static ALGroupElem identity(long N);
    static ALGroupElem diamond(long N, long Q, long x);   // <x>_Q for Q || N
    static ALGroupElem atkin_lehner(long N, long Q);      // W_Q for Q || N

    long level() const { return N_; }
    const Matrix<mpz_class>& rep() const { return g_; }

    ALGroupElem operator*(const ALGroupElem& o) const;
    bool operator==(const ALGroupElem& o) const;
    bool operator!=(const ALGroupElem& o) const { return !(*this == o); }

private:
    long N_;
    Matrix<mpz_class> g_;
};

struct ALRelationsReport {
    bool square = false;        // W_Q^2 = <Q>_{N/Q} <-1>_Q up to scalars
    bool conjugation = false;   // <d>_Q <d'>_{N/Q} W_Q = W_Q <d^{-1}>_Q <d'>_{N/Q}
    bool composition = false;   // W_{QQ'} = <Q'>_Q W_Q W_{Q'} for every Q' || N/Q
    std::string witness;        // printable representatives for the square relation
    bool all() const { return square && conjugation && composition; }
};

// Verifies the defining relations of the Atkin-Lehner classes for Q || N over
// every unit and every unitary divisor involved; perturb swaps in a wrong
// diamond on the square relation and must come back false.
ALRelationsReport atkin_lehner_relations_check(long N, long Q, bool perturb = false);

}  // namespace rankin
