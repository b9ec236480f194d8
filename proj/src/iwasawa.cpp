#include "rankin/iwasawa.hpp"

namespace rankin {

namespace {

long pow_long(long b, long e) {
    long out = 1;
    for (long i = 0; i < e; ++i) {
        RANKIN_CHECK(out <= (1L << 56) / b, "pow_long: overflow");
        out *= b;
    }
    return out;
}

mpq_class rat_pow(long g, long k) {
    mpq_class out = 1;
    mpq_class base = k >= 0 ? mpq_class(g) : mpq_class(1, g);
    for (long i = 0, n = k >= 0 ? k : -k; i < n; ++i) out *= base;
    return out;
}

}  // namespace

IwasawaTensorElem::IwasawaTensorElem(long p, long m, size_t nfactors, long coeff_level)
    : p_(p), m_(m), q_(pow_long(p, m + 1)), level_(coeff_level), n_(nfactors) {
    RANKIN_CHECK(p >= 2 && m >= 0 && nfactors >= 1 && coeff_level >= 1,
                 "IwasawaTensorElem: bad parameters");
}

IwasawaTensorElem IwasawaTensorElem::delta(long p, long m, long coeff_level,
                                           const std::vector<long>& g) {
    IwasawaTensorElem out(p, m, g.size(), coeff_level);
    out.add_term(g, CycQ::scalar(coeff_level, 1));
    return out;
}

void IwasawaTensorElem::add_term(const std::vector<long>& g, const CycQ& c) {
    RANKIN_CHECK(g.size() == n_, "IwasawaTensorElem: factor count mismatch");
    RANKIN_CHECK(c.level() == level_, "IwasawaTensorElem: coefficient level mismatch");
    if (c.is_zero()) return;
    std::vector<long> key(n_);
    for (size_t i = 0; i < n_; ++i) {
        long r = ((g[i] % q_) + q_) % q_;
        RANKIN_CHECK(gcd_l(r, q_) == 1, "IwasawaTensorElem: group element not a unit");
        key[i] = r;
    }
    auto it = t_.find(key);
    if (it == t_.end()) {
        t_.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

void IwasawaTensorElem::check_compatible(const IwasawaTensorElem& o) const {
    RANKIN_CHECK(p_ == o.p_ && m_ == o.m_ && n_ == o.n_ && level_ == o.level_,
                 "IwasawaTensorElem: incompatible operands");
}

IwasawaTensorElem IwasawaTensorElem::operator+(const IwasawaTensorElem& o) const {
    check_compatible(o);
    IwasawaTensorElem out = *this;
    for (const auto& [g, c] : o.t_) out.add_term(g, c);
    return out;
}

IwasawaTensorElem IwasawaTensorElem::operator-(const IwasawaTensorElem& o) const {
    check_compatible(o);
    IwasawaTensorElem out = *this;
    for (const auto& [g, c] : o.t_) out.add_term(g, -c);
    return out;
}

IwasawaTensorElem IwasawaTensorElem::operator-() const {
    IwasawaTensorElem out(p_, m_, n_, level_);
    for (const auto& [g, c] : t_) out.t_.emplace(g, -c);
    return out;
}

IwasawaTensorElem IwasawaTensorElem::operator*(const IwasawaTensorElem& o) const {
    check_compatible(o);
    IwasawaTensorElem out(p_, m_, n_, level_);
    for (const auto& [g, c] : t_)
        for (const auto& [h, d] : o.t_) {
            std::vector<long> gh(n_);
            for (size_t i = 0; i < n_; ++i) gh[i] = (long)((__int128)g[i] * h[i] % q_);
            out.add_term(gh, c * d);
        }
    return out;
}

IwasawaTensorElem IwasawaTensorElem::operator*(const mpq_class& s) const {
    IwasawaTensorElem out(p_, m_, n_, level_);
    if (s == 0) return out;
    for (const auto& [g, c] : t_) out.t_.emplace(g, c * s);
    return out;
}

IwasawaTensorElem IwasawaTensorElem::scale(const CycQ& s) const {
    RANKIN_CHECK(s.level() == level_, "IwasawaTensorElem::scale: level mismatch");
    IwasawaTensorElem out(p_, m_, n_, level_);
    for (const auto& [g, c] : t_) out.add_term(g, c * s);
    return out;
}

bool IwasawaTensorElem::operator==(const IwasawaTensorElem& o) const {
    check_compatible(o);
    return (*this - o).is_zero();
}

CycQ IwasawaTensorElem::specialize(const std::vector<std::pair<DirichletChar, long>>& weights,
                                   long level) const {
    RANKIN_CHECK(weights.size() == n_, "specialize: weight count mismatch");
    RANKIN_CHECK(level % level_ == 0, "specialize: level must absorb the coefficients");
    for (const auto& [eta, k] : weights) {
        (void)k;
        RANKIN_CHECK(q_ % eta.modulus() == 0, "specialize: character modulus must divide p^{m+1}");
    }
    CycQ acc = CycQ::scalar(level, 0);
    for (const auto& [g, c] : t_) {
        CycQ term = cyclo_embed(c, level);
        mpq_class rat = 1;
        for (size_t i = 0; i < n_; ++i) {
            const auto& [eta, k] = weights[i];
            term *= eta.value(g[i], level);
            rat *= rat_pow(g[i], k);
        }
        acc += term * rat;
    }
    return acc;
}

CycQ IwasawaTensorElem::moment(const std::vector<long>& exps, long level) const {
    std::vector<std::pair<DirichletChar, long>> w;
    w.reserve(exps.size());
    for (long k : exps) w.emplace_back(DirichletChar::trivial(1), k);
    return specialize(w, level);
}

CycloElem<ZModPr> IwasawaTensorElem::specialize_zmod(
    const std::vector<std::pair<DirichletChar, long>>& weights, long level, long r) const {
    CycQ v = specialize(weights, level);
    ZModPr z(p_, r, 0);
    std::vector<ZModPr> c((size_t)v.degree(), z);
    for (long i = 0; i < v.degree(); ++i) c[(size_t)i] = zmod_from_rational(p_, r, v.coeff(i));
    return CycloElem<ZModPr>::from_poly(level, std::move(c), z);
}

CycQ smoothed_zeta_target(long t, long N, const DirichletChar& eta, long d, long p, long level) {
    DirichletChar pr = eta.primitive_part().induce(lcm_l(eta.primitive_part().modulus(), p));
    RANKIN_CHECK(gcd_l(d, pr.modulus()) == 1, "smoothed_zeta_target: d not prime to conductor");
    CycQ z1 = twisted_partial_zeta_zero(t, N, pr, level);
    CycQ z2 = twisted_partial_zeta_zero(d * t, N, pr, level);
    CycQ dinv = pr.primitive_part().inverse().value(d, level);
    return z1 * mpq_class(mpz_class(d) * d) - dinv * z2 * mpq_class(d);
}

std::map<long, mpq_class> mazur_measure(long p, long m, long N, long t, long d) {
    long q = pow_long(p, m + 1);
    RANKIN_CHECK(N >= 1 && gcd_l(N, p) == 1, "mazur_measure: N must be prime to p");
    RANKIN_CHECK(gcd_l(d, N * q) == 1, "mazur_measure: d must be a unit at N and p");
    long L = carmichael_lambda(q);
    long phi_q = euler_phi(q);

    auto chars = DirichletChar::all(q);
    std::vector<CycQ> targets;
    std::vector<DirichletChar> inv_chars;
    targets.reserve(chars.size());
    inv_chars.reserve(chars.size());
    for (const auto& chi : chars) {
        targets.push_back(smoothed_zeta_target(t, N, chi, d, p, L));
        inv_chars.push_back(chi.inverse());
    }

    std::map<long, mpq_class> mu;
    for (long g = 1; g <= q; ++g) {
        if (gcd_l(g, q) != 1) continue;
        CycQ acc = CycQ::scalar(L, 0);
        for (size_t i = 0; i < chars.size(); ++i)
            acc += inv_chars[i].value(g, L) * targets[i];
        acc = acc * mpq_class(1, phi_q);
        mu[g] = cyclo_rational(acc);
    }
    return mu;
}

std::map<long, mpq_class> mazur_measure_closed(long p, long m, long N, long t, long d) {
    long q = pow_long(p, m + 1);
    RANKIN_CHECK(N >= 1 && gcd_l(N, p) == 1, "mazur_measure_closed: N must be prime to p");
    RANKIN_CHECK(gcd_l(d, N * q) == 1, "mazur_measure_closed: d must be a unit at N and p");
    long M = N * q;
    long n_inv = invmod_l(((N % q) + q) % q, q);
    // canonical lift in [1, M] of the pair (a mod N, x mod q)
    auto lift = [&](long a, long x) {
        long am = ((a % N) + N) % N;
        long r0 = ((((x - am) % q) + q) % q) * n_inv % q;
        long c = am + N * r0;
        return c == 0 ? M : c;
    };
    std::map<long, mpq_class> mu;
    for (long x = 1; x <= q; ++x) {
        if (gcd_l(x, q) != 1) continue;
        long c1 = lift(t, x);
        long c2 = lift(d * t, (d * x) % q);
        mpq_class h1(d * (d - 1), 2);
        h1.canonicalize();
        mpq_class h2(d * (d * c1 - c2), M);
        h2.canonicalize();
        mu[x] = h1 - h2;
    }
    return mu;
}

std::map<long, ZModPr> mazur_measure_zmod(long p, long m, long N, long t, long d, long r) {
    auto mu = mazur_measure(p, m, N, t, d);
    std::map<long, ZModPr> out;
    for (const auto& [g, v] : mu) out.emplace(g, zmod_from_rational(p, r, v));
    return out;
}

}  // namespace rankin
