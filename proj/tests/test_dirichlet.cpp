#include <doctest.h>

#include "rankin/cyclotomic.hpp"
#include "rankin/dirichlet.hpp"

#include <set>
#include <vector>

using namespace rankin;

namespace {

mpq_class ex0(0);

CycloElem<mpq_class> cscalar(long level, const mpq_class& v) {
    return CycloElem<mpq_class>::scalar(level, v);
}

// embed Q(zeta_m) into Q(zeta_M) for m | M via zeta_m -> zeta_M^{M/m}
CycloElem<mpq_class> embed(const CycloElem<mpq_class>& x, long M) {
    long m = x.level();
    RANKIN_CHECK(M % m == 0, "embed: levels incompatible");
    long s = M / m;
    std::vector<mpq_class> poly((size_t)((x.degree() - 1) * s + 1), mpq_class(0));
    for (long i = 0; i < x.degree(); ++i) poly[(size_t)(i * s)] = x.coeff(i);
    return CycloElem<mpq_class>::from_poly(M, poly, ex0);
}

}  // namespace

TEST_CASE("character group structure") {
    for (long N : {1L, 3L, 4L, 5L, 8L, 12L, 15L, 21L, 24L, 25L}) {
        auto chars = DirichletChar::all(N);
        CHECK((long)chars.size() == euler_phi(N));

        // all distinct, trivial character present
        for (size_t i = 0; i < chars.size(); ++i)
            for (size_t j = i + 1; j < chars.size(); ++j) CHECK_FALSE(chars[i] == chars[j]);
        bool has_trivial = false;
        for (const auto& c : chars)
            if (c.is_trivial()) has_trivial = true;
        CHECK(has_trivial);

        long L = carmichael_lambda(N);
        for (const auto& chi : chars) {
            CHECK(chi.table_level() == L);
            CHECK(L % chi.order() == 0);
            // multiplicative on the unit group
            for (long a = 1; a <= N; ++a) {
                if (!chi.is_unit_arg(a)) continue;
                for (long b = a; b <= N; ++b) {
                    if (!chi.is_unit_arg(b)) continue;
                    long ab = N == 1 ? 0 : (a * b) % N;
                    long LL = chi.table_level();
                    CHECK((chi.value_exponent(a) + chi.value_exponent(b)) % LL ==
                          chi.value_exponent(ab));
                }
            }
            // inverse really inverts
            CHECK((chi * chi.inverse()).order() == 1);
        }
    }
}

TEST_CASE("character orthogonality") {
    for (long N : {5L, 8L, 12L, 21L}) {
        long L = carmichael_lambda(N);
        for (const auto& chi : DirichletChar::all(N)) {
            auto s = cscalar(L, 0);
            for (long a = 1; a <= N; ++a)
                if (chi.is_unit_arg(a)) s += chi.value(a, L);
            if (chi.is_trivial())
                CHECK(s == cscalar(L, euler_phi(N)));
            else
                CHECK(s.is_zero());
        }
        // column orthogonality: sum over characters at fixed a != 1
        for (long a = 2; a < N; ++a) {
            if (gcd_l(a, N) != 1) continue;
            auto s = cscalar(L, 0);
            for (const auto& chi : DirichletChar::all(N)) s += chi.value(a, L);
            CHECK(s.is_zero());
        }
    }
}

TEST_CASE("conductor, primitivity, induction") {
    auto chi4 = char_from_unit_exponents(4, {0, 1});  // the odd character mod 4
    CHECK(chi4.conductor() == 4);
    CHECK(chi4.is_primitive());
    CHECK(chi4.order() == 2);
    CHECK(chi4.parity() == -1);

    auto triv12 = DirichletChar::trivial(12);
    CHECK(triv12.conductor() == 1);
    CHECK(triv12.parity() == 1);

    // lift of the mod 4 character to modulus 8 has conductor 4
    auto lift8 = char_from_unit_exponents(8, {0, 1, 0, 1});  // on units 1,3,5,7
    CHECK(lift8.conductor() == 4);
    CHECK_FALSE(lift8.is_primitive());
    CHECK(lift8.primitive_part() == chi4);
    CHECK(chi4.induce(8) == lift8);
    CHECK(chi4.induce(12).conductor() == 4);
    CHECK(chi4.induce(12).primitive_part() == chi4);

    // the two primitive quadratic characters mod 8
    auto chi8 = char_from_unit_exponents(8, {0, 1, 1, 0});
    auto chi8m = char_from_unit_exponents(8, {0, 0, 1, 1});
    CHECK(chi8.conductor() == 8);
    CHECK(chi8m.conductor() == 8);
    CHECK(chi8.parity() == 1);
    CHECK(chi8m.parity() == -1);
    CHECK((chi8 * chi8m).primitive_part() == chi4);

    // quadratic character mod 5
    auto chi5 = char_from_unit_exponents(5, {0, 2, 2, 0});
    CHECK(chi5.order() == 2);
    CHECK(chi5.conductor() == 5);
    CHECK(chi5.parity() == 1);
    for (long a : {1L, 4L}) CHECK(chi5.value(a, 2) == cscalar(2, 1));
    for (long a : {2L, 3L}) CHECK(chi5.value(a, 2) == cscalar(2, -1));
    CHECK(chi5.value(5, 2).is_zero());
    CHECK_FALSE(chi5.is_unit_arg(10));

    // product across coprime moduli lands at the lcm with full conductor
    auto prod = chi4 * chi5;
    CHECK(prod.modulus() == 20);
    CHECK(prod.conductor() == 20);
    CHECK(prod.parity() == -1);
}

TEST_CASE("character literal round trip") {
    for (long N : {1L, 4L, 5L, 8L, 12L}) {
        for (const auto& chi : DirichletChar::all(N)) {
            auto back = parse_char_literal(char_literal(chi));
            CHECK(back == chi);
            CHECK(back.modulus() == N);
        }
    }

    auto chi = parse_char_literal("chi(5; 0,1,3,2)");
    CHECK(chi.modulus() == 5);
    CHECK(chi.order() == 4);
    CHECK(chi.conductor() == 5);
    CHECK(chi.value_exponent(2) == 1);
    CHECK(chi.value_exponent(3) == 3);

    CHECK(parse_char_literal("chi(1; 0)").is_trivial());
    CHECK_THROWS(parse_char_literal("chi(5; 0,1,1,1)"));  // not multiplicative
    CHECK_THROWS(parse_char_literal("chi(5; 0,1)"));      // wrong count
    CHECK_THROWS(parse_char_literal("tau(5; 0,0,0,0)"));
}

TEST_CASE("Teichmuller character realizes as the Teichmuller lift") {
    auto om = teichmuller_char(5);
    CHECK(om.modulus() == 5);
    CHECK(om.order() == 4);
    CHECK(om.parity() == -1);
    CHECK(om.value_exponent(2) == 1);  // 2 is the smallest primitive root mod 5

    for (long a = 1; a < 5; ++a) {
        auto img = realize_cyclo(om.value(a, 4), 5, 3, 5);
        CHECK(img == CycloElem<ZModPr>::scalar(5, teichmuller(5, 3, a)));
    }

    auto om7 = teichmuller_char(7);
    CHECK(om7.order() == 6);
    for (long a = 1; a < 7; ++a) {
        auto img = realize_cyclo(om7.value(a, 6), 7, 4, 7);
        CHECK(img == CycloElem<ZModPr>::scalar(7, teichmuller(7, 4, a)));
    }
}

TEST_CASE("Bernoulli numbers and polynomials") {
    CHECK(bernoulli_number(0) == 1);
    CHECK(bernoulli_number(1) == mpq_class(-1, 2));
    CHECK(bernoulli_number(2) == mpq_class(1, 6));
    CHECK(bernoulli_number(3) == 0);
    CHECK(bernoulli_number(4) == mpq_class(-1, 30));
    CHECK(bernoulli_number(6) == mpq_class(1, 42));
    CHECK(bernoulli_number(8) == mpq_class(-1, 30));
    CHECK(bernoulli_number(10) == mpq_class(5, 66));
    CHECK(bernoulli_number(12) == mpq_class(-691, 2730));

    CHECK(bernoulli_poly(2, mpq_class(1, 4)) == mpq_class(-1, 48));
    CHECK(bernoulli_poly(3, mpq_class(1, 4)) == mpq_class(3, 64));
    CHECK(bernoulli_poly(3, mpq_class(3, 4)) == mpq_class(-3, 64));
    CHECK(bernoulli_poly(5, mpq_class(0)) == 0);
    CHECK(bernoulli_poly(4, mpq_class(1)) == bernoulli_number(4));

    // derivative property B_n'(x) = n B_{n-1}(x) sampled at rational points
    for (long n : {2L, 3L, 4L, 5L}) {
        mpq_class x(3, 7), h;
        // difference identity B_n(x+1) - B_n(x) = n x^{n-1}
        mpq_class xpow = 1;
        for (long i = 0; i < n - 1; ++i) xpow *= x;
        CHECK(bernoulli_poly(n, x + 1) - bernoulli_poly(n, x) == n * xpow);
    }
}

TEST_CASE("partial zeta values at nonpositive integers") {
    CHECK(partial_zeta_neg(1, 1, 0) == mpq_class(-1, 2));   // zeta(0)
    CHECK(partial_zeta_neg(1, 1, 1) == mpq_class(-1, 12));  // zeta(-1)
    CHECK(partial_zeta_neg(1, 1, 3) == mpq_class(1, 120));  // zeta(-3)

    // summing residue classes recovers zeta
    for (long N : {2L, 3L, 5L, 12L}) {
        for (long k : {0L, 1L, 2L, 3L, 5L}) {
            mpq_class s = 0;
            for (long t = 1; t <= N; ++t) s += partial_zeta_neg(t, N, k);
            CHECK(s == partial_zeta_neg(1, 1, k));
        }
    }

    // refinement: class t mod N splits into classes t + jN mod cN
    for (long N : {1L, 3L, 4L}) {
        for (long c : {2L, 3L}) {
            for (long t = 1; t <= N; ++t) {
                for (long k : {0L, 1L, 2L, 4L}) {
                    mpq_class s = 0;
                    for (long j = 0; j < c; ++j) s += partial_zeta_neg(t + j * N, c * N, k);
                    CHECK(s == partial_zeta_neg(t, N, k));
                }
            }
        }
    }

    // representative shifts do not matter
    CHECK(partial_zeta_neg(7, 5, 2) == partial_zeta_neg(2, 5, 2));
    CHECK(partial_zeta_neg(-3, 5, 2) == partial_zeta_neg(2, 5, 2));
}

TEST_CASE("Dirichlet L-values at nonpositive integers") {
    auto chi4 = char_from_unit_exponents(4, {0, 1});
    CHECK(cyclo_rational(dirichlet_l_neg(chi4, 0)) == mpq_class(1, 2));
    CHECK(cyclo_rational(dirichlet_l_neg(chi4, 2)) == mpq_class(-1, 2));
    // odd character, odd functional-equation zeros at even k
    CHECK(cyclo_rational(dirichlet_l_neg(chi4, 1)) == 0);
    CHECK(cyclo_rational(dirichlet_l_neg(chi4, 3)) == 0);

    // even nontrivial character vanishes at s = 0
    auto chi5 = char_from_unit_exponents(5, {0, 2, 2, 0});
    CHECK(dirichlet_l_neg(chi5, 0).is_zero());
    // L(chi5, -1) = -B_{2,chi5}/2 = -2/5
    CHECK(cyclo_rational(dirichlet_l_neg(chi5, 1)) == mpq_class(-2, 5));

    // trivial character mod 1 gives zeta
    CHECK(cyclo_rational(dirichlet_l_neg(DirichletChar::trivial(1), 1)) == mpq_class(-1, 12));

    // imprimitive trivial character mod N strips Euler factors:
    // L_N(0) = zeta(0) * prod_{p | N} (1 - 1) ... nontrivial only through k >= 1
    // L_4(-1) = zeta(-1) * (1 - 2) = 1/12
    CHECK(cyclo_rational(dirichlet_l_neg(DirichletChar::trivial(4), 1)) == mpq_class(1, 12));
}

TEST_CASE("twisted partial zeta at s = 0") {
    auto chi4 = char_from_unit_exponents(4, {0, 1});
    auto chi5 = char_from_unit_exponents(5, {0, 2, 2, 0});

    // full-sum consistency with L(eta, 0)
    CHECK(twisted_partial_zeta_zero(1, 1, chi4, 2) == dirichlet_l_neg(chi4, 0, 2));
    CHECK(twisted_partial_zeta_zero(1, 1, chi5, 2).is_zero());

    // hand value: sum over a = 1 mod 4 of chi5(a) (1/2 - a/20) = 1
    CHECK(twisted_partial_zeta_zero(1, 4, chi5, 2) == cscalar(2, 1));

    // untwisted case degenerates to the Hurwitz value
    for (long N : {1L, 3L, 5L}) {
        for (long t = 1; t <= N; ++t) {
            auto v = twisted_partial_zeta_zero(t, N, DirichletChar::trivial(1), 2);
            CHECK(cyclo_rational(v) == partial_zeta_neg(t, N, 0));
        }
    }

    // recombination: summing over residues recovers the L-value
    for (long N : {2L, 3L, 4L}) {
        auto s = cscalar(4, 0);
        for (long t = 1; t <= N; ++t) s += twisted_partial_zeta_zero(t, N, chi4, 4);
        CHECK(s == dirichlet_l_neg(chi4, 0, 4));
    }

    // modulus-refinement invariance, computed directly at a larger common modulus
    XorShift64 rng(13);
    for (int trial = 0; trial < 12; ++trial) {
        long N = 1 + (long)rng.below(6);
        long t = 1 + (long)rng.below(N);
        const DirichletChar& eta = trial % 2 ? chi4 : chi5;
        long M = lcm_l(N, eta.modulus());
        long c = 2 + (long)rng.below(3);
        long M2 = c * M;
        auto direct = cscalar(4, 0);
        for (long a = 1; a <= M2; ++a) {
            if (a % N != t % N || !eta.is_unit_arg(a)) continue;
            direct += eta.value(a, 4) * (mpq_class(1, 2) - mpq_class(a) / M2);
        }
        CHECK(direct == twisted_partial_zeta_zero(t, N, eta, 4));
    }
}

TEST_CASE("Gauss sum oracles") {
    // quadratic character mod 5: gauss sum squares to 5
    auto chi5 = char_from_unit_exponents(5, {0, 2, 2, 0});
    auto g5 = gauss_sum(chi5);
    CHECK(g5.level() == 10);
    CHECK(g5 * g5 == cscalar(10, 5));

    // odd quadratic mod 4: gauss sum squares to -4
    auto chi4 = char_from_unit_exponents(4, {0, 1});
    auto g4 = gauss_sum(chi4);
    CHECK(g4 * g4 == cscalar(4, -4));

    // order 6 character mod 7: G(chi) G(chibar) = chi(-1) * 7 = -7
    auto om7 = teichmuller_char(7);
    auto g7 = gauss_sum(om7);
    auto g7bar = gauss_sum(om7.inverse());
    CHECK(g7.level() == 42);
    CHECK(g7 * g7bar == cscalar(42, -7));
    // and |G|^2 = 7 in the form G(chi) conj(G(chi)) with conj = galois(-1)
    CHECK(g7 * g7.galois(-1) == cscalar(42, 7));
}

TEST_CASE("Gauss sums are multiplicative across coprime conductors") {
    for (auto [m1, m2] : std::vector<std::pair<long, long>>{{4, 5}, {3, 7}, {7, 8}, {5, 9}}) {
        for (const auto& c1 : DirichletChar::all(m1)) {
            if (!c1.is_primitive()) continue;
            for (const auto& c2 : DirichletChar::all(m2)) {
                if (!c2.is_primitive()) continue;
                auto prod = c1 * c2;
                REQUIRE(prod.modulus() == m1 * m2);
                auto g1 = gauss_sum(c1), g2 = gauss_sum(c2), g12 = gauss_sum(prod);
                long M = lcm_l(lcm_l(g1.level(), g2.level()), g12.level());
                auto lhs = embed(g12, M);
                auto rhs = embed(c1.value(m2, 0), M) * embed(c2.value(m1, 0), M) *
                           embed(g1, M) * embed(g2, M);
                CHECK(lhs == rhs);
            }
        }
    }
}
