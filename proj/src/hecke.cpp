#include "rankin/hecke.hpp"

#include <sstream>

namespace rankin {

namespace {

LaurentPoly gen(const LaurentRingPtr& R, const std::string& name, int power = 1) {
    return LaurentPoly::gen(R, name, power);
}

}  // namespace

LaurentRingPtr hecke_operator_ring() {
    static const LaurentRingPtr R =
        make_laurent_ring({"T1", "T2", "S1", "S2", "L", "J", "s"},
                          {false, false, false, false, true, true, true});
    return R;
}

LaurentPoly sigma_graded(const LaurentPoly& f) {
    const LaurentRingPtr& R = f.ring();
    RANKIN_CHECK(*R == *hecke_operator_ring(), "sigma_graded: wrong ring");
    size_t iL = R->index_of("L"), iJ = R->index_of("J"), is = R->index_of("s");
    for (const auto& [e, c] : f.terms())
        RANKIN_CHECK(e[iL] == e[iJ], "sigma_graded: term is not a polynomial in l^{1+j}");
    std::vector<int> w(R->arity(), 1);
    w[iJ] = 0;
    w[is] = 0;
    return f.grade_twist(is, w);
}

Matrix<LaurentPoly> lstab_matrix_A1(bool graded) {
    auto R = hecke_operator_ring();
    LaurentPoly T = gen(R, "T1"), S = gen(R, "S1");
    LaurentPoly P = gen(R, "L") * gen(R, "J");
    if (graded) {
        LaurentPoly s = gen(R, "s");
        T = T * s;
        S = S * s;
        P = P * s;
    }
    Matrix<LaurentPoly> A(4, 4, LaurentPoly(R));
    A.at(0, 0) = T;
    A.at(0, 1) = -S;
    A.at(1, 0) = P;
    A.at(2, 2) = T;
    A.at(2, 3) = -S;
    A.at(3, 2) = P;
    return A;
}

Matrix<LaurentPoly> lstab_matrix_A2(bool graded) {
    auto R = hecke_operator_ring();
    LaurentPoly T = gen(R, "T2"), S = gen(R, "S2");
    LaurentPoly P = gen(R, "L") * gen(R, "J");
    if (graded) {
        LaurentPoly s = gen(R, "s");
        T = T * s;
        S = S * s;
        P = P * s;
    }
    Matrix<LaurentPoly> A(4, 4, LaurentPoly(R));
    A.at(0, 0) = T;
    A.at(0, 2) = -S;
    A.at(1, 1) = T;
    A.at(1, 3) = -S;
    A.at(2, 0) = P;
    A.at(3, 1) = P;
    return A;
}

std::vector<LaurentPoly> lstab_column_from(const Matrix<LaurentPoly>& A1,
                                           const Matrix<LaurentPoly>& A2, bool graded) {
    auto R = hecke_operator_ring();
    LaurentPoly T1 = gen(R, "T1"), T2 = gen(R, "T2");
    LaurentPoly P = gen(R, "L") * gen(R, "J");
    if (graded) {
        LaurentPoly s = gen(R, "s");
        T1 = T1 * s;
        T2 = T2 * s;
        P = P * s;
    }
    auto I = Matrix<LaurentPoly>::identity(4, LaurentPoly(R));
    auto B1 = I * T1 - A1;
    auto B2 = I * T2 - A2;
    auto PI = I * P;
    auto M = (PI - A1 * B2) * (PI - B1 * A2) * (PI - B1 * B2);
    LaurentPoly::Exps e(R->arity(), 0);
    e[R->index_of("L")] = -3;
    e[R->index_of("J")] = -3;
    if (graded) e[R->index_of("s")] = -3;
    LaurentPoly clear_p3 = LaurentPoly::monomial(R, e, 1);
    std::vector<LaurentPoly> col;
    col.reserve(4);
    for (long i = 0; i < 4; ++i) col.push_back(M.at(i, 0) * clear_p3);
    return col;
}

std::vector<LaurentPoly> lstab_first_column(bool grading) {
    return lstab_column_from(lstab_matrix_A1(grading), lstab_matrix_A2(grading), grading);
}

std::vector<LaurentPoly> lstab_printed_column(bool grading) {
    auto R = hecke_operator_ring();
    LaurentPoly one = LaurentPoly::constant(R, 1);
    LaurentPoly T1 = gen(R, "T1"), T2 = gen(R, "T2"), S1 = gen(R, "S1"), S2 = gen(R, "S2");
    LaurentPoly P = gen(R, "L") * gen(R, "J");
    LaurentPoly s = grading ? gen(R, "s") : one;
    LaurentPoly s2 = s * s;
    std::vector<LaurentPoly> col;
    col.reserve(4);
    col.push_back(one - S1 * S2 * s2);
    col.push_back(T2 * s - T1 * S2 * s2);
    col.push_back(T1 * s - S1 * T2 * s2);
    col.push_back(P * s * (one - S1 * S2 * s2));
    return col;
}

LaurentPoly cyclonorm_target_operator(bool level_divisible_by_ell) {
    auto R = hecke_operator_ring();
    LaurentPoly T1 = gen(R, "T1"), T2 = gen(R, "T2"), S1 = gen(R, "S1"), S2 = gen(R, "S2");
    LaurentPoly J = gen(R, "J");
    LaurentPoly P = gen(R, "L") * J;
    LaurentPoly s = gen(R, "s");
    // (l + 1) l^j = l^{1+j} + l^j = P + J; the divisible-level branch loses
    // the l^j summand along with the Frobenius term
    LaurentPoly weight_one = level_divisible_by_ell ? P : P + J;
    LaurentPoly out = T1 * T2 + (weight_one * S1 * S2 - S1 * T2 * T2 - T1 * T1 * S2) * s +
                      S1 * S2 * T1 * T2 * s * s - P * S1 * S1 * S2 * S2 * s.pow(3);
    if (!level_divisible_by_ell) out -= J * gen(R, "s", -1);
    return out;
}

LaurentPoly cyclonorm_expand(const CyclonormOptions& opt) {
    auto R = hecke_operator_ring();
    LaurentPoly one = LaurentPoly::constant(R, 1);
    LaurentPoly T1 = gen(R, "T1"), T2 = gen(R, "T2"), S1 = gen(R, "S1"), S2 = gen(R, "S2");
    LaurentPoly J = gen(R, "J");
    LaurentPoly P = gen(R, "L") * J;
    LaurentPoly s = gen(R, "s");
    LaurentPoly s2 = s * s;
    // pushforwards of the class at the l-augmented fibre level, l coprime to
    // the base level, indexed by the choice of degeneracy map in each factor
    LaurentPoly n11 = one - S1 * S2 * s2;
    LaurentPoly n21 = T2 * s - T1 * S2 * s2;
    LaurentPoly n12 = T1 * s - S1 * T2 * s2;
    LaurentPoly n22 = P * s * n11;
    // (pr1 x pr1)_* (U', U') via (pr1)_* U' = T (pr1)_* - S (pr2)_* per factor
    LaurentPoly lhs = T1 * T2 * n11 - T1 * S2 * n12 - S1 * T2 * n21 + S1 * S2 * n22;
    if (!opt.level_divisible_by_ell && !opt.drop_frobenius_term)
        lhs -= J * gen(R, "s", -1) * n11;
    return lhs - cyclonorm_target_operator(opt.level_divisible_by_ell);
}

LaurentRingPtr euler_factor_ring() {
    static const LaurentRingPtr R = make_laurent_ring(
        {"af", "ag", "ef", "eg", "L", "X"}, {false, false, false, false, true, true});
    return R;
}

LaurentPoly euler_factor_P(long k, long kp) {
    RANKIN_CHECK(k >= 0 && kp >= 0, "euler_factor_P: negative weight");
    auto R = euler_factor_ring();
    LaurentPoly af = gen(R, "af"), ag = gen(R, "ag"), ef = gen(R, "ef"), eg = gen(R, "eg");
    LaurentPoly X = gen(R, "X");
    auto Lpow = [&](long n) { return gen(R, "L", (int)n); };
    // elementary symmetric functions of the four root products, written with
    // alpha + beta = a and alpha * beta = l^{k+1} e in each factor
    LaurentPoly e1 = af * ag;
    LaurentPoly e2 = Lpow(kp + 1) * eg * af * af + Lpow(k + 1) * ef * ag * ag -
                     Lpow(k + kp + 2) * ef * eg * mpz_class(2);
    LaurentPoly e3 = Lpow(k + kp + 2) * ef * eg * af * ag;
    LaurentPoly e4 = Lpow(2 * k + 2 * kp + 4) * ef * ef * eg * eg;
    LaurentPoly one = LaurentPoly::constant(R, 1);
    return one - e1 * Lpow(-1) * X + e2 * Lpow(-2) * X.pow(2) - e3 * Lpow(-3) * X.pow(3) +
           e4 * Lpow(-4) * X.pow(4);
}

LaurentPoly euler_factor_Q(long k, long kp) {
    RANKIN_CHECK(k >= 0 && kp >= 0, "euler_factor_Q: negative weight");
    auto R = euler_factor_ring();
    LaurentPoly af = gen(R, "af"), ag = gen(R, "ag"), ef = gen(R, "ef"), eg = gen(R, "eg");
    LaurentPoly X = gen(R, "X");
    LaurentPoly one = LaurentPoly::constant(R, 1);
    auto Lpow = [&](long n) { return gen(R, "L", (int)n); };
    return -gen(R, "X", -1) + af * ag +
           ((Lpow(1) + one) * Lpow(k + kp) * ef * eg - Lpow(k) * ef * ag * ag -
            Lpow(kp) * eg * af * af) *
               X +
           Lpow(k + kp) * af * ag * ef * eg * X.pow(2) -
           Lpow(1 + 2 * k + 2 * kp) * ef * ef * eg * eg * X.pow(3);
}

QvpReport q_vs_p_congruence_check(long k, long kp, bool perturb_quadratic_term) {
    auto R = euler_factor_ring();
    LaurentPoly ef = gen(R, "ef"), eg = gen(R, "eg");
    LaurentPoly L = gen(R, "L"), X = gen(R, "X"), Xinv = gen(R, "X", -1);
    LaurentPoly one = LaurentPoly::constant(R, 1);
    LaurentPoly Q = euler_factor_Q(k, kp);
    if (perturb_quadratic_term) Q += X.pow(2);
    LaurentPoly P = euler_factor_P(k, kp);
    auto rhs = [&](long ex) {
        return Xinv * ((L - one) * (one - gen(R, "L", (int)ex) * ef * eg * X.pow(2)) - L * P);
    };
    QvpReport rep{false, false, LaurentPoly(R), false};
    rep.factored_identity = (Q - rhs(k + kp)).is_zero();
    // the congruence modulo l - 1 is the substitution l = 1
    std::vector<LaurentPoly> at_l_one{gen(R, "af"), gen(R, "ag"), ef, eg, one, X};
    rep.mod_ell_minus_one = (Q.subst(at_l_one) + Xinv * P.subst(at_l_one)).is_zero();
    rep.printed_defect = Q - rhs(k + kp + 2);
    LaurentPoly expected_defect =
        (L - one).pow(2) * (L + one) * gen(R, "L", (int)(k + kp)) * ef * eg * X;
    rep.printed_defect_matches = (rep.printed_defect - expected_defect).is_zero();
    return rep;
}

LaurentRingPtr stabilisation_eigen_ring() {
    static const LaurentRingPtr R =
        make_laurent_ring({"af", "bf", "ag", "bg", "P"}, {false, false, false, false, true});
    return R;
}

bool stabilisation_eigen_check(bool perturb) {
    auto R = stabilisation_eigen_ring();
    LaurentPoly af = gen(R, "af"), bf = gen(R, "bf"), ag = gen(R, "ag"), bg = gen(R, "bg");
    LaurentPoly P = gen(R, "P"), Pinv = gen(R, "P", -1);
    LaurentPoly z(R);

    // scalar action of the stabilisation matrix on an eigen-isotypic part:
    // trace a + b and determinant scaled to a*b/P, in the factor's slots
    auto scalar_action = [&](const LaurentPoly& a, const LaurentPoly& b, bool second_factor) {
        Matrix<LaurentPoly> M(4, 4, z);
        LaurentPoly t = a + b, d = -(a * b * Pinv);
        if (!second_factor) {
            M.at(0, 0) = t;
            M.at(0, 1) = d;
            M.at(1, 0) = P;
            M.at(2, 2) = t;
            M.at(2, 3) = d;
            M.at(3, 2) = P;
        } else {
            M.at(0, 0) = t;
            M.at(0, 2) = d;
            M.at(2, 0) = P;
            M.at(1, 1) = t;
            M.at(1, 3) = d;
            M.at(3, 1) = P;
        }
        return M;
    };

    Matrix<LaurentPoly> Af = scalar_action(af, bf, false);
    Matrix<LaurentPoly> Ag = scalar_action(ag, bg, true);
    if (perturb) Af.at(1, 0) = -P;
    auto I = Matrix<LaurentPoly>::identity(4, z);
    Matrix<LaurentPoly> Bf = I * (af + bf) - Af;
    Matrix<LaurentPoly> Bg = I * (ag + bg) - Ag;

    Matrix<LaurentPoly> row(1, 4, z);
    row.at(0, 0) = LaurentPoly::constant(R, 1);
    row.at(0, 1) = -(bf * Pinv);
    row.at(0, 2) = -(bg * Pinv);
    row.at(0, 3) = bf * bg * Pinv * Pinv;

    auto is_left_eigen = [&](const Matrix<LaurentPoly>& M, const LaurentPoly& lambda) {
        return (row * M - row * lambda).is_zero();
    };
    return is_left_eigen(Af, af) && is_left_eigen(Bf, bf) && is_left_eigen(Ag, ag) &&
           is_left_eigen(Bg, bg);
}

std::string hecke_transcript() {
    std::ostringstream os;
    os << "l-stabilisation: first column of (P - A1 B2)(P - B1 A2)(P - B1 B2) / P^3, P = l^{1+j}\n";
    auto col = lstab_first_column(true);
    auto want = lstab_printed_column(true);
    static const char* names[4] = {"pr1 x pr1", "pr2 x pr1", "pr1 x pr2", "pr2 x pr2"};
    for (int i = 0; i < 4; ++i)
        os << "  " << names[i] << ": " << col[(size_t)i].str()
           << (col[(size_t)i] == want[(size_t)i] ? "  [matches]" : "  [MISMATCH]") << "\n";
    os << "distribution relation: target operator " << cyclonorm_target_operator().str() << "\n";
    os << "  expansion minus target = " << cyclonorm_expand().str() << "\n";
    for (long k = 0; k <= 2; ++k)
        for (long kp = 0; kp <= 2; ++kp) {
            auto rep = q_vs_p_congruence_check(k, kp);
            os << "q vs p Euler factors, weights (" << k << ", " << kp << "): factored identity "
               << (rep.factored_identity ? "holds" : "FAILS") << ", mod (l - 1) "
               << (rep.mod_ell_minus_one ? "holds" : "FAILS") << ", printed-exponent defect "
               << rep.printed_defect.str() << "\n";
        }
    os << "stabilised eigenvector collapse: " << (stabilisation_eigen_check() ? "holds" : "FAILS")
       << "\n";
    return os.str();
}

}  // namespace rankin
