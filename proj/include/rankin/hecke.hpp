#pragma once

#include "rankin/laurent.hpp"
#include "rankin/matrix_ring.hpp"

#include <string>
#include <vector>

namespace rankin {

// Shared coefficient ring for the Hecke-operator identities at an auxiliary
// prime l.  The generators name the operators acting on the product of two
// modular curves: T1 = (T'_l, 1), T2 = (1, T'_l), S1 = ([l]_* <l^{-1}>, 1),
// S2 = (1, [l]_* <l^{-1}>).  The scalar l^{1+j} is the invertible monomial
// L*J (L carries l, J carries l^j, so (l+1)*l^j is expressible as L*J + J),
// and s is the inverse arithmetic Frobenius sigma_l^{-1}.
LaurentRingPtr hecke_operator_ring();

// Grading homomorphism attaching s^d to every monomial of total degree d in
// the operator generators, with the degree of an l-power read off the L
// exponent.  Rejects terms whose L and J exponents disagree, since those are
// not polynomials in the scalar L*J.
LaurentPoly sigma_graded(const LaurentPoly& f);

// 4x4 matrices expressing (U'_l, 1) resp. (1, U'_l) through the column of
// pushforwards (pr1 x pr1, pr2 x pr1, pr1 x pr2, pr2 x pr2); with `graded`
// each generator entry carries one power of s.
Matrix<LaurentPoly> lstab_matrix_A1(bool graded);
Matrix<LaurentPoly> lstab_matrix_A2(bool graded);

// First column of (P - A1*B2)(P - B1*A2)(P - B1*B2), where B_i = T_i - A_i
// and P = L*J, rescaled by the cleared denominator P^3 (and s^3 when graded).
std::vector<LaurentPoly> lstab_column_from(const Matrix<LaurentPoly>& A1,
                                           const Matrix<LaurentPoly>& A2, bool graded);
std::vector<LaurentPoly> lstab_first_column(bool grading);

// The stabilisation column in closed form:
// [1 - S1*S2*s^2, T2*s - T1*S2*s^2, T1*s - S1*T2*s^2, P*s*(1 - S1*S2*s^2)],
// specialised at s = 1 when grading is off.
std::vector<LaurentPoly> lstab_printed_column(bool grading);

struct CyclonormOptions {
    // the norm step in the Iwasawa direction sees l already dividing the
    // level, so it contributes (U', U') with no Frobenius correction
    bool level_divisible_by_ell = false;
    // negative control: run the generic branch but omit the -l^j sigma_l term
    bool drop_frobenius_term = false;
};

// Distribution-relation operator: -J*s^{-1} + T1*T2
// + ((P + J)*S1*S2 - S1*T2^2 - T1^2*S2)*s + S1*S2*T1*T2*s^2 - P*S1^2*S2^2*s^3
// in the generic branch; the divisible-level branch keeps only the s^0..s^3
// part with P*S1*S2 in place of (P + J)*S1*S2.
LaurentPoly cyclonorm_target_operator(bool level_divisible_by_ell = false);

// Expands the two-step pushforward (first the U-norm step, then pr1 x pr1
// rewritten through (pr_i)_* U' = T (pr_1)_* - S (pr_2)_* resp. l^{1+j}
// (pr_1)_* and the four lower-level pushforward formulas) and subtracts the
// target operator; the identity holds iff the result is the zero polynomial.
LaurentPoly cyclonorm_expand(const CyclonormOptions& opt = {});

// Coefficient ring for the Euler-factor arithmetic: Hecke eigenvalues af,
// ag, nebentypus values ef, eg, the prime L, and the series variable X.
LaurentRingPtr euler_factor_ring();

// Degree-4 Euler factor of the convolution twisted by 1: the product of
// (1 - u*v*X/l) over the four root products u*v, expanded through the
// elementary symmetric functions of the roots (af = alpha + beta and
// l^{k+1} ef = alpha*beta per factor), so no radicals appear.
LaurentPoly euler_factor_P(long k, long kp);

// The cyclotomic-direction norm factor Q_l as a Laurent polynomial in X:
// -X^{-1} + af*ag + ((L+1) L^{k+kp} ef*eg - L^k ef*ag^2 - L^kp eg*af^2) X
// + L^{k+kp} af*ag*ef*eg X^2 - L^{1+2k+2kp} ef^2 eg^2 X^3.
LaurentPoly euler_factor_Q(long k, long kp);

struct QvpReport {
    bool factored_identity;        // Q == X^{-1}((L-1)(1 - L^{k+kp} ef eg X^2) - L*P)
    bool mod_ell_minus_one;        // Q == -X^{-1} P after substituting L = 1
    LaurentPoly printed_defect;    // Q minus the variant with exponent k+kp+2
    bool printed_defect_matches;   // defect == (L-1)^2 (L+1) L^{k+kp} ef eg X
};

// Verifies the closed-form relation between Q_l and P_l and its reduction
// modulo l - 1; `perturb_quadratic_term` adds 1 to the X^2 coefficient of
// Q_l first (negative control, both identities must then fail).
QvpReport q_vs_p_congruence_check(long k, long kp, bool perturb_quadratic_term = false);

// Scalar model of the stabilised Hecke action: the root pairs (af, bf) and
// (ag, bg) of the two Hecke polynomials plus the invertible scalar P = l^{1+j}.
LaurentRingPtr stabilisation_eigen_ring();

// The row vector (1, -bf/P, -bg/P, bf*bg/P^2) is a simultaneous left
// eigenvector of the scalar actions of (A', 1), (B', 1), (1, A'), (1, B')
// with eigenvalues af, bf, ag, bg; `perturb` flips one matrix entry and the
// check must then fail.
bool stabilisation_eigen_check(bool perturb = false);

// Human-readable derivation transcript for the three symbolic identities.
std::string hecke_transcript();

}  // namespace rankin
