#include "rankin/dirichlet.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rankin {

std::vector<std::pair<long, long>> unit_group_generators(long m) {
    RANKIN_CHECK(m >= 1, "unit_group_generators: bad modulus");
    std::vector<std::pair<long, long>> out;
    if (m <= 2) return out;
    for (long p : prime_factors(m)) {
        long q = 1, a = 0;
        for (long mm = m; mm % p == 0; mm /= p) {
            q *= p;
            ++a;
        }
        long rest = m / q;
        std::vector<std::pair<long, long>> local;  // generators mod q
        if (p == 2) {
            if (a == 2) {
                local.push_back({3, 2});
            } else if (a >= 3) {
                local.push_back({q - 1, 2});
                local.push_back({5, q / 4});
            }
            // a == 1: trivial factor
        } else {
            long g = primitive_root(q);
            local.push_back({g, euler_phi(q)});
        }
        for (auto [g, d] : local) {
            long lifted;
            if (rest == 1) {
                lifted = g;
            } else {
                // x = g mod q, x = 1 mod rest
                long u = invmod_l(rest % q, q);
                lifted = (long)(((__int128)rest * u % m * g % m + (__int128)q * invmod_l(q % rest, rest) % m) % m);
            }
            RANKIN_CHECK(lifted % q == g % q && (rest == 1 || lifted % rest == 1),
                         "unit_group_generators: CRT lift failed");
            RANKIN_CHECK(mult_order(lifted, m) == d, "unit_group_generators: lifted order mismatch");
            out.push_back({lifted, d});
        }
    }
    return out;
}

long carmichael_lambda(long m) {
    long L = 1;
    for (auto [g, d] : unit_group_generators(m)) {
        (void)g;
        L = lcm_l(L, d);
    }
    return L;
}

DirichletChar::DirichletChar(long m, long L, std::vector<long> table)
    : m_(m), L_(L), table_(std::move(table)) {}

DirichletChar::DirichletChar(long modulus, const std::vector<long>& gen_exponents) {
    RANKIN_CHECK(modulus >= 1, "DirichletChar: bad modulus");
    m_ = modulus;
    L_ = carmichael_lambda(modulus);
    auto gens = unit_group_generators(modulus);
    RANKIN_CHECK(gen_exponents.size() == gens.size(), "DirichletChar: wrong number of exponents");
    table_.assign((size_t)modulus, -1);
    std::vector<std::pair<long, long>> acc{{1 % modulus, 0}};  // (residue, exponent)
    for (size_t i = 0; i < gens.size(); ++i) {
        auto [g, d] = gens[i];
        long e = gen_exponents[i];
        RANKIN_CHECK(e >= 0 && e < L_, "DirichletChar: exponent out of range");
        RANKIN_CHECK((e * d) % L_ == 0, "DirichletChar: exponent incompatible with generator order");
        std::vector<std::pair<long, long>> next;
        long gp = 1 % modulus, ke = 0;
        for (long k = 0; k < d; ++k) {
            for (auto [res, ex] : acc)
                next.push_back({(long)((__int128)res * gp % modulus), (ex + ke) % L_});
            gp = (long)((__int128)gp * g % modulus);
            ke = (ke + e) % L_;
        }
        acc = std::move(next);
    }
    for (auto [res, ex] : acc) {
        RANKIN_CHECK(table_[(size_t)res] == -1, "DirichletChar: repeated residue (bad generators)");
        table_[(size_t)res] = ex;
    }
    RANKIN_CHECK((long)acc.size() == euler_phi(modulus), "DirichletChar: unit count mismatch");
}

DirichletChar DirichletChar::trivial(long modulus) {
    auto gens = unit_group_generators(modulus);
    return DirichletChar(modulus, std::vector<long>(gens.size(), 0));
}

std::vector<DirichletChar> DirichletChar::all(long modulus) {
    auto gens = unit_group_generators(modulus);
    std::vector<DirichletChar> out;
    long L = carmichael_lambda(modulus);
    std::vector<long> idx(gens.size(), 0);
    while (true) {
        std::vector<long> exps(gens.size());
        for (size_t i = 0; i < gens.size(); ++i) exps[i] = idx[i] * (L / gens[i].second);
        out.push_back(DirichletChar(modulus, exps));
        size_t i = 0;
        for (; i < gens.size(); ++i) {
            if (++idx[i] < gens[i].second) break;
            idx[i] = 0;
        }
        if (i == gens.size()) break;
    }
    RANKIN_CHECK((long)out.size() == euler_phi(modulus), "DirichletChar::all: count mismatch");
    return out;
}

bool DirichletChar::is_unit_arg(long a) const {
    a %= m_;
    if (a < 0) a += m_;
    return table_[(size_t)a] >= 0;
}

long DirichletChar::value_exponent(long a) const {
    a %= m_;
    if (a < 0) a += m_;
    long e = table_[(size_t)a];
    RANKIN_CHECK(e >= 0, "DirichletChar: value at non-unit");
    return e;
}

long DirichletChar::order() const {
    long g = L_;
    for (long e : table_)
        if (e > 0) g = gcd_l(g, e);
    return L_ / g;
}

long DirichletChar::conductor() const {
    for (long f = 1; f <= m_; ++f) {
        if (m_ % f != 0) continue;
        bool ok = true;
        for (long a = 1; a <= m_ && ok; a += f)
            if (table_[(size_t)(a % m_)] > 0) ok = false;
        if (ok) return f;
    }
    fail("DirichletChar::conductor: unreachable");
}

CycloElem<mpq_class> DirichletChar::value(long a, long level) const {
    long ord = order();
    if (level == 0) level = ord;
    RANKIN_CHECK(level % ord == 0, "DirichletChar::value: level not divisible by order");
    a %= m_;
    if (a < 0) a += m_;
    long e = table_[(size_t)a];
    if (e < 0) return CycloElem<mpq_class>::scalar(level, 0);
    // zeta_L^e = zeta_level^(e * level / L); integrality follows from ord | level
    long num = e * level;
    RANKIN_CHECK(num % L_ == 0, "DirichletChar::value: exponent not integral at this level");
    return CycloElem<mpq_class>::root_power(level, num / L_, mpq_class(0));
}

long DirichletChar::parity() const {
    if (m_ <= 2) return 1;
    long e = value_exponent(m_ - 1);
    if (e == 0) return 1;
    RANKIN_CHECK(2 * e == L_, "DirichletChar::parity: chi(-1) not +-1");
    return -1;
}

DirichletChar DirichletChar::primitive_part() const {
    long f = conductor();
    long Lf = carmichael_lambda(f);
    std::vector<long> table((size_t)f, -1);
    for (long a = 0; a < f; ++a) {
        if (gcd_l(a, f) != 1) continue;
        long lift = a;
        while (gcd_l(lift, m_) != 1) lift += f;
        long e = table_[(size_t)(lift % m_)];
        RANKIN_CHECK(e >= 0, "DirichletChar::primitive_part: lift not a unit");
        long num = e * Lf;
        RANKIN_CHECK(num % L_ == 0, "DirichletChar::primitive_part: exponent not integral");
        table[(size_t)a] = num / L_;
    }
    if (f == 1) table = {0};
    return DirichletChar(f, Lf, std::move(table));
}

DirichletChar DirichletChar::induce(long new_modulus) const {
    RANKIN_CHECK(new_modulus % m_ == 0, "DirichletChar::induce: modulus must be a multiple");
    long LM = carmichael_lambda(new_modulus);
    RANKIN_CHECK(LM % L_ == 0, "DirichletChar::induce: lambda divisibility");
    std::vector<long> table((size_t)new_modulus, -1);
    for (long a = 0; a < new_modulus; ++a) {
        if (gcd_l(a, new_modulus) != 1) continue;
        long e = table_[(size_t)(a % m_)];
        RANKIN_CHECK(e >= 0, "DirichletChar::induce: unit mismatch");
        table[(size_t)a] = e * (LM / L_);
    }
    if (new_modulus == 1) table = {0};
    return DirichletChar(new_modulus, LM, std::move(table));
}

DirichletChar DirichletChar::operator*(const DirichletChar& o) const {
    long M = lcm_l(m_, o.m_);
    DirichletChar a = induce(M), b = o.induce(M);
    std::vector<long> table = a.table_;
    for (long x = 0; x < M; ++x)
        if (table[(size_t)x] >= 0) table[(size_t)x] = (table[(size_t)x] + b.table_[(size_t)x]) % a.L_;
    return DirichletChar(M, a.L_, std::move(table));
}

DirichletChar DirichletChar::inverse() const {
    std::vector<long> table = table_;
    for (auto& e : table)
        if (e > 0) e = L_ - e;
    return DirichletChar(m_, L_, std::move(table));
}

DirichletChar teichmuller_char(long p) {
    RANKIN_CHECK(is_prime_l(p) && p >= 3, "teichmuller_char: need odd prime");
    return DirichletChar(p, {1});
}

DirichletChar char_from_unit_exponents(long N, const std::vector<long>& exps) {
    RANKIN_CHECK(N >= 1, "char_from_unit_exponents: bad modulus");
    long L = carmichael_lambda(N);
    std::vector<long> units;
    for (long a = N == 1 ? 0 : 1; a < std::max(N, 1L); ++a)
        if (gcd_l(a, N) == 1) units.push_back(a);
    if (N == 1) units = {0};
    RANKIN_CHECK((long)exps.size() == (long)units.size(),
                 "char_from_unit_exponents: need one exponent per unit");
    std::vector<long> table((size_t)N, -1);
    for (size_t i = 0; i < units.size(); ++i) {
        long e = exps[i];
        RANKIN_CHECK(e >= 0 && e < std::max(L, 1L), "char_from_unit_exponents: exponent out of range");
        table[(size_t)units[i]] = e;
    }
    DirichletChar chi(N, L, std::move(table));
    RANKIN_CHECK(chi.value_exponent(1 % N) == 0 || N == 1,
                 "char_from_unit_exponents: chi(1) must be 1");
    for (long a : units)
        for (long b : units) {
            long ab = N == 1 ? 0 : (long)((__int128)a * b % N);
            long want = (chi.value_exponent(a) + chi.value_exponent(b)) % L;
            RANKIN_CHECK(chi.value_exponent(ab) == want,
                         "char_from_unit_exponents: values are not multiplicative");
        }
    return chi;
}

DirichletChar parse_char_literal(const std::string& text) {
    auto open = text.find('(');
    auto semi = text.find(';');
    auto close = text.rfind(')');
    RANKIN_CHECK(text.substr(0, open) == "chi" && open != std::string::npos &&
                     semi != std::string::npos && close != std::string::npos && open < semi &&
                     semi < close,
                 "parse_char_literal: expected chi(N; v1,v2,...)");
    long N = std::stol(text.substr(open + 1, semi - open - 1));
    std::vector<long> exps;
    std::string body = text.substr(semi + 1, close - semi - 1);
    std::string cur;
    for (char c : body + ",") {
        if (c == ',') {
            RANKIN_CHECK(!cur.empty(), "parse_char_literal: empty exponent");
            exps.push_back(std::stol(cur));
            cur.clear();
        } else if (!isspace((unsigned char)c)) {
            cur += c;
        }
    }
    return char_from_unit_exponents(N, exps);
}

std::string char_literal(const DirichletChar& chi) {
    long N = chi.modulus();
    std::ostringstream os;
    os << "chi(" << N << ";";
    bool first = true;
    for (long a = 0; a < std::max(N, 1L); ++a) {
        if (N != 1 && !chi.is_unit_arg(a)) continue;
        if (N != 1 && a == 0) continue;
        os << (first ? " " : ",") << chi.value_exponent(a);
        first = false;
    }
    os << ")";
    return os.str();
}

CycloElem<mpq_class> gauss_sum(const DirichletChar& chi) {
    long m = chi.modulus();
    long M = lcm_l(std::max(chi.order(), 1L), m);
    auto acc = CycloElem<mpq_class>::scalar(M, 0);
    for (long a = 0; a < m; ++a) {
        if (!chi.is_unit_arg(a)) continue;
        long e = chi.value_exponent(a);
        long idx = ((e * M / chi.table_level()) + a * (M / m)) % M;
        acc += CycloElem<mpq_class>::root_power(M, idx, mpq_class(0));
    }
    return acc;
}

mpq_class bernoulli_number(long n) {
    RANKIN_CHECK(n >= 0, "bernoulli_number: negative index");
    static std::vector<mpq_class> cache{mpq_class(1)};
    while ((long)cache.size() <= n) {
        long k = (long)cache.size();
        mpq_class s = 0;
        for (long j = 0; j < k; ++j) s += mpq_class(binomial_z(k + 1, j)) * cache[(size_t)j];
        cache.push_back(-s / mpq_class(k + 1));
    }
    return cache[(size_t)n];
}

mpq_class bernoulli_poly(long n, const mpq_class& x) {
    mpq_class acc = 0, xp = 1;
    for (long i = n; i >= 0; --i) {
        acc += mpq_class(binomial_z(n, i)) * bernoulli_number(i) * xp;
        xp *= x;
    }
    return acc;
}

mpq_class partial_zeta_neg(long t, long N, long k) {
    RANKIN_CHECK(N >= 1 && k >= 0, "partial_zeta_neg: bad arguments");
    long tp = ((t - 1) % N + N) % N + 1;  // representative in (0, N]
    mpq_class x = mpq_class(tp) / N;
    mpq_class val = -bernoulli_poly(k + 1, x) / mpq_class(k + 1);
    return mpq_class(pow_z(N, k)) * val;
}

CycloElem<mpq_class> twisted_partial_zeta_zero(long t, long N, const DirichletChar& eta, long level) {
    long M = lcm_l(N, eta.modulus());
    auto acc = CycloElem<mpq_class>::scalar(level, 0);
    long t0 = ((t % N) + N) % N;
    for (long c = 1; c <= M; ++c) {
        if (c % N != t0 % N) continue;
        if (!eta.is_unit_arg(c)) continue;
        acc += eta.value(c, level) * (mpq_class(1, 2) - mpq_class(c) / M);
    }
    return acc;
}

CycloElem<mpq_class> dirichlet_l_neg(const DirichletChar& chi, long k, long level) {
    if (level == 0) level = chi.order();
    long m = chi.modulus();
    auto acc = CycloElem<mpq_class>::scalar(level, 0);
    for (long t = 1; t <= m; ++t) {
        if (!chi.is_unit_arg(t)) continue;
        acc += chi.value(t, level) * partial_zeta_neg(t, m, k);
    }
    return acc;
}

mpq_class cyclo_rational(const CycloElem<mpq_class>& x) {
    for (long i = 1; i < x.degree(); ++i)
        RANKIN_CHECK(x.coeff(i) == 0, "cyclo_rational: element is not rational");
    return x.coeff(0);
}

}  // namespace rankin
