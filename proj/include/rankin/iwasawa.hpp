#pragma once

#include "rankin/cyclotomic.hpp"
#include "rankin/dirichlet.hpp"
#include "rankin/zmod.hpp"

#include <map>
#include <utility>
#include <vector>

namespace rankin {

using CycQ = CycloElem<mpq_class>;

// Element of the group algebra of ((Z/p^{m+1})^*)^n with coefficients in
// Q(zeta_coeff_level).  This is the working truncation of an n-variable
// measure algebra: group elements are written multiplicatively as [g] and a
// weight-space specialization evaluates [g] at a character times an integer
// power of g.
class IwasawaTensorElem {
public:
    IwasawaTensorElem(long p, long m, size_t nfactors, long coeff_level);

    long p() const { return p_; }
    long truncation() const { return m_; }
    long modulus() const { return q_; }  // p^{m+1}
    size_t nfactors() const { return n_; }
    long coeff_level() const { return level_; }

    static IwasawaTensorElem delta(long p, long m, long coeff_level,
                                   const std::vector<long>& g);

    // accumulate c * [g]; residues are reduced mod p^{m+1} and must be units
    void add_term(const std::vector<long>& g, const CycQ& c);
    const std::map<std::vector<long>, CycQ>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t num_terms() const { return t_.size(); }

    IwasawaTensorElem operator+(const IwasawaTensorElem& o) const;
    IwasawaTensorElem operator-(const IwasawaTensorElem& o) const;
    IwasawaTensorElem operator-() const;
    IwasawaTensorElem operator*(const IwasawaTensorElem& o) const;  // convolution
    IwasawaTensorElem operator*(const mpq_class& s) const;
    IwasawaTensorElem scale(const CycQ& s) const;
    IwasawaTensorElem& operator+=(const IwasawaTensorElem& o) { return *this = *this + o; }
    IwasawaTensorElem& operator-=(const IwasawaTensorElem& o) { return *this = *this - o; }
    IwasawaTensorElem& operator*=(const IwasawaTensorElem& o) { return *this = *this * o; }
    bool operator==(const IwasawaTensorElem& o) const;

    // apply per factor the character eta_i and the power g -> g^{k_i}; the
    // result is exact in Q(zeta_level) and approximates the p-adic value of
    // the untruncated measure to precision p^{m+1}
    CycQ specialize(const std::vector<std::pair<DirichletChar, long>>& weights,
                    long level) const;

    // specialization along pure powers, with every character trivial
    CycQ moment(const std::vector<long>& exps, long level) const;

    // reduction of specialize into Z[zeta] tensor Z/p^r; canonical residues are
    // multiplicative only mod p^{m+1}, so with nonzero weights this is a ring
    // homomorphism exactly when r <= m+1 (character-only pairings work at any r)
    CycloElem<ZModPr> specialize_zmod(const std::vector<std::pair<DirichletChar, long>>& weights,
                                      long level, long r) const;

private:
    long p_, m_, q_, level_;
    size_t n_;
    std::map<std::vector<long>, CycQ> t_;

    void check_compatible(const IwasawaTensorElem& o) const;
};

// d^2 zeta(t mod N, eta, 0) - d eta(d)^{-1} zeta(dt mod N, eta, 0).  The
// character acts through its primitive part but as a function on the p-units:
// classes divisible by p never contribute, even for trivial eta.  This is
// what makes the smoothed measure below integral.
CycQ smoothed_zeta_target(long t, long N, const DirichletChar& eta, long d, long p, long level);

// The measure mu on (Z/p^{m+1})^* whose character integrals are the smoothed
// zeta targets over the class t mod N.  Built by finite Fourier inversion;
// the coefficients come out rational (Galois equivariance of the targets) and
// the construction fails loudly if they do not.
std::map<long, mpq_class> mazur_measure(long p, long m, long N, long t, long d);

// The same measure through the Hurwitz value zeta(c mod M, 0) = 1/2 - c/M with
// M = N p^{m+1}: mu(x) = d^2 (1/2 - c1/M) - d (1/2 - c2/M) where c1, c2 are the
// canonical lifts of (t, x) and (dt, dx).  No Fourier inversion, so it scales
// to large m; agreement with mazur_measure is covered by tests.
std::map<long, mpq_class> mazur_measure_closed(long p, long m, long N, long t, long d);

// the same coefficients reduced into Z/p^r
std::map<long, ZModPr> mazur_measure_zmod(long p, long m, long N, long t, long d, long r);

}  // namespace rankin
