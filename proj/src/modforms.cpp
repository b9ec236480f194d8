#include "rankin/modforms.hpp"

#include <fstream>
#include <sstream>

namespace rankin {

namespace {

mpq_class frac(long num, long den) {
    mpq_class v(num, den);
    v.canonicalize();
    return v;
}

// coefficientwise reduction of an exact cyclotomic value into Z[zeta] mod p^r
CycloElem<ZModPr> cyclo_reduce(const CycQ& x, long p, long r) {
    ZModPr ex = zmod_from_rational(p, r, mpq_class(0));
    std::vector<ZModPr> c;
    c.reserve((size_t)x.degree());
    for (long i = 0; i < x.degree(); ++i) c.push_back(zmod_from_rational(p, r, x.coeff(i)));
    return CycloElem<ZModPr>::from_poly(x.level(), c, ex);
}

long pow_long_chk(long b, long e) {
    long out = 1;
    for (long i = 0; i < e; ++i) {
        RANKIN_CHECK(out <= (long)1 << 40, "power does not fit the working range");
        out *= b;
    }
    return out;
}

bool is_p_power(long n, long p) {
    while (n % p == 0) n /= p;
    return n == 1;
}

}  // namespace

CycQ eisenstein_divisor_sum(long k, long t, long N, const DirichletChar& chi1,
                            const DirichletChar& chi2, long n, long level) {
    RANKIN_CHECK(k >= 1 && n >= 1 && N >= 1, "eisenstein_divisor_sum: bad arguments");
    long tm = ((t % N) + N) % N;
    CycQ acc = CycQ::scalar(level, mpq_class(0));
    for (long u = 1; u <= n; ++u) {
        if (n % u != 0 || (u - tm) % N != 0) continue;
        long v = n / u;
        CycQ term = chi1.value(u, level) * chi2.value(v, level);
        acc += term * mpq_class(pow_z(v, (unsigned long)(k - 1)));
    }
    return acc;
}

ModularFormQExp<CycQ> eisenstein_qexp(long k, long t, long N, const DirichletChar& chi1,
                                      const DirichletChar& chi2, long T, long level) {
    RANKIN_CHECK(k >= 1 && N >= 1 && T >= 1, "eisenstein_qexp: bad parameters");
    bool triv1 = chi1.is_trivial(), triv2 = chi2.is_trivial();
    RANKIN_CHECK(k == 1 || (!triv1 && !triv2),
                 "eisenstein_qexp: weight above one needs both characters nontrivial");
    long L0 = lcm_l(chi1.order(), chi2.order());
    long L = (level == 0) ? L0 : level;
    RANKIN_CHECK(L % L0 == 0, "eisenstein_qexp: coefficient level too small for the characters");
    long sign = ((k % 2 == 0) ? 1 : -1) * chi1.parity() * chi2.parity();
    long tm = ((t % N) + N) % N;
    long tneg = (N - tm) % N;

    std::vector<CycQ> a;
    a.reserve((size_t)T);
    CycQ a0 = CycQ::scalar(L, mpq_class(0));
    if (!triv1 && !triv2) {
        // vanishing constant term
    } else if (k == 1 && triv2) {
        CycQ z1 = twisted_partial_zeta_zero(tm, N, chi1, L);
        CycQ z2 = twisted_partial_zeta_zero(tneg, N, chi1, L);
        a0 = (z1 + z2 * mpq_class(sign)) * frac(1, 2);
    } else {
        RANKIN_CHECK(false, "eisenstein_qexp: constant term undefined for this character pattern");
    }
    a.push_back(a0);
    for (long n = 1; n < T; ++n) {
        CycQ s1 = eisenstein_divisor_sum(k, tm, N, chi1, chi2, n, L);
        CycQ s2 = eisenstein_divisor_sum(k, tneg, N, chi1, chi2, n, L);
        a.push_back(s1 + s2 * mpq_class(sign));
    }
    long Nf = N * chi1.conductor() * chi2.conductor();
    DirichletChar eps = (chi1.primitive_part() * chi2.primitive_part()).induce(Nf);
    return ModularFormQExp<CycQ>(Nf, k, eps, TruncSeries<CycQ>(std::move(a)));
}

LambdaAdicEisenstein lambda_adic_g0(long p, long m, long N, const DirichletChar& nu, long T) {
    RANKIN_CHECK(is_prime_l(p) && p >= 3 && m >= 0 && T >= 1, "lambda_adic_g0: bad parameters");
    RANKIN_CHECK(N >= 1 && gcd_l(N, p) == 1, "lambda_adic_g0: tame level must be prime to p");
    RANKIN_CHECK(!nu.is_trivial() && is_p_power(nu.modulus(), p),
                 "lambda_adic_g0: nu must be a nontrivial character of p-power modulus");
    long L = nu.order();
    DirichletChar nui = nu.inverse();
    IwasawaTensorElem zero(p, m, 2, L);
    std::vector<IwasawaTensorElem> a((size_t)T, zero);
    for (long n = 1; n < T; ++n) {
        if (n % p == 0) continue;
        for (long u = 1; u <= n; ++u) {
            if (n % u != 0 || u % N != 0) continue;
            long v = n / u;
            a[(size_t)n].add_term({1, v}, nui.value(u, L) * frac(2, v));
        }
    }
    return {p, m, N, 0, nu, 0, std::move(a)};
}

LambdaAdicEisenstein lambda_adic_g0_smoothed(long p, long m, long N, const DirichletChar& nu,
                                             long c, long T) {
    RANKIN_CHECK(c > 1 && gcd_l(c, p) == 1, "lambda_adic_g0_smoothed: c must be a unit at p");
    LambdaAdicEisenstein base = lambda_adic_g0(p, m, N, nu, T);
    long L = nu.order();
    IwasawaTensorElem cf = IwasawaTensorElem::delta(p, m, L, {1, 1}) * mpq_class(c * c)
                         - IwasawaTensorElem::delta(p, m, L, {1, c}).scale(nu.value(c, L));
    for (auto& x : base.coeffs) x = cf * x;
    base.smoothing = c;
    return base;
}

LambdaAdicEisenstein lambda_adic_g1(long p, long m, long N, long t, const DirichletChar& nu,
                                    long d, long T) {
    RANKIN_CHECK(is_prime_l(p) && p >= 3 && m >= 0 && T >= 1, "lambda_adic_g1: bad parameters");
    RANKIN_CHECK(N >= 1 && gcd_l(N, p) == 1, "lambda_adic_g1: tame level must be prime to p");
    RANKIN_CHECK(d > 1 && gcd_l(d, 6 * p * N) == 1, "lambda_adic_g1: d must be > 1 and prime to 6pN");
    RANKIN_CHECK(!nu.is_trivial() && is_p_power(nu.modulus(), p),
                 "lambda_adic_g1: nu must be a nontrivial character of p-power modulus");
    long L = nu.order();
    long q = pow_long_chk(p, m + 1);
    IwasawaTensorElem zero(p, m, 2, L);
    IwasawaTensorElem mir = IwasawaTensorElem::delta(p, m, L, {q - 1, q - 1});
    mpq_class par(nu.parity());

    auto raw = [&](long a, long n) {
        IwasawaTensorElem out = zero;
        long am = ((a % N) + N) % N;
        for (long u = 1; u <= n; ++u) {
            if (n % u != 0 || u % p == 0 || (u - am) % N != 0) continue;
            out.add_term({u, invmod_l(u % q, q)}, nu.value(u, L) * mpq_class(u));
        }
        return out;
    };
    auto full = [&](long a, long n) { return raw(a, n) + (mir * raw(-a, n)) * par; };
    // the zeta measure of a class, paired into the group algebra with the
    // twist-inverting substitution x -> x nu(x) [(x, x^{-1})]
    auto zmeas = [&](long a) {
        IwasawaTensorElem out = zero;
        for (const auto& [x, wv] : mazur_measure_closed(p, m, N, a, d)) {
            if (wv == 0) continue;
            out.add_term({x, invmod_l(x, q)}, nu.value(x, L) * (wv * mpq_class(x)));
        }
        return out;
    };

    IwasawaTensorElem sf = IwasawaTensorElem::delta(p, m, L, {invmod_l(d % q, q), d % q})
                               .scale(nu.inverse().value(d, L));
    std::vector<IwasawaTensorElem> a((size_t)T, zero);
    a[0] = (zmeas(t) + (mir * zmeas(-t)) * par) * frac(1, 2);
    for (long n = 1; n < T; ++n)
        a[(size_t)n] = full(t, n) * mpq_class(d * d) - sf * full(d * t, n);
    return {p, m, N, ((t % N) + N) % N, nu, d, std::move(a)};
}

CycQ specialize_weight_twist(const IwasawaTensorElem& a, long k, const DirichletChar& eps,
                             const DirichletChar& chi, long level) {
    std::vector<std::pair<DirichletChar, long>> w{{eps, k}, {chi, k + 1}};
    return a.specialize(w, level);
}

CycloElem<ZModPr> specialize_weight_twist_zmod(const IwasawaTensorElem& a, long k,
                                               const DirichletChar& eps, const DirichletChar& chi,
                                               long level, long r) {
    std::vector<std::pair<DirichletChar, long>> w{{eps, k}, {chi, k + 1}};
    return a.specialize_zmod(w, level, r);
}

EisNaturalityReport eisenstein_naturality_check(const EisNaturalityOptions& opt) {
    EisNaturalityReport rep;
    const long p = opt.p, m = opt.m, r = opt.r, N = opt.N, T = opt.T, c = opt.c, d = opt.d;
    RANKIN_CHECK(is_prime_l(p) && p >= 3, "eisenstein_naturality_check: p must be an odd prime");
    RANKIN_CHECK(r >= 1 && r <= m + 1, "eisenstein_naturality_check: exactness needs r <= m+1");
    RANKIN_CHECK(is_p_power(opt.chi_modulus, p) && opt.chi_modulus > 1,
                 "eisenstein_naturality_check: twist modulus must be a power of p");
    RANKIN_CHECK(pow_long_chk(p, m + 1) > T,
                 "eisenstein_naturality_check: truncation modulus must exceed the q-precision");

    std::vector<DirichletChar> nus, chis, epss;
    for (const auto& ch : DirichletChar::all(p))
        if (!ch.is_trivial()) nus.push_back(ch);
    for (const auto& ch : DirichletChar::all(opt.chi_modulus))
        if (!ch.is_trivial()) chis.push_back(ch);
    epss.push_back(DirichletChar::trivial(p));
    for (const auto& ch : DirichletChar::all(p))
        if (!ch.is_trivial()) {
            epss.push_back(ch);
            break;
        }

    DirichletChar triv1 = DirichletChar::trivial(1);
    for (const auto& nu : nus) {
        auto g0 = lambda_adic_g0_smoothed(p, m, N, nu, c, T);
        auto g1 = lambda_adic_g1(p, m, N, 1, nu, d, T);
        DirichletChar nui = nu.inverse();
        for (const auto& chi : chis) {
            long L = lcm_l(nu.order(), chi.order());
            for (long k = 0; k <= opt.max_k; ++k) {
                bool sign_ok = chi.parity() * nu.parity() == ((k % 2 == 0) ? -1 : 1);
                if (sign_ok) {
                    auto cls = eisenstein_qexp(k + 1, 0, N, nui, chi, T, L);
                    long ce = k + 1 + (opt.perturb ? 1 : 0);
                    CycQ cf = CycQ::scalar(L, mpq_class(c * c))
                            - chi.value(c, L) * nu.value(c, L) * mpq_class(pow_z(c, (unsigned long)ce));
                    for (long n = 0; n < T; ++n) {
                        auto lhs = specialize_weight_twist_zmod(g0.an(n), k, triv1, chi, L, r);
                        auto rhs = cyclo_reduce(cf * cls.an(n), p, r);
                        if (!(lhs == rhs)) rep.ok = false;
                        ++rep.coefficients;
                    }
                    ++rep.weight_points;
                }
                for (const auto& eps : epss) {
                    DirichletChar eta = (eps * nu * chi.inverse()).primitive_part();
                    if (eta.is_trivial()) continue;
                    long L2 = lcm_l(L, eps.order());
                    auto c1 = eisenstein_qexp(1, 1, N, eta, triv1, T, L2);
                    auto c2 = (N == 1) ? c1 : eisenstein_qexp(1, d, N, eta, triv1, T, L2);
                    CycQ etad = eta.inverse().value(d, L2) * mpq_class(d);
                    for (long n = 0; n < T; ++n) {
                        auto lhs = specialize_weight_twist_zmod(g1.an(n), k, eps, chi, L2, r);
                        auto rhs = cyclo_reduce(c1.an(n) * mpq_class(d * d) - c2.an(n) * etad, p, r);
                        if (!(lhs == rhs)) rep.ok = false;
                        ++rep.coefficients;
                    }
                    if (eta.parity() == -1) ++rep.twist_points;
                }
            }
        }
    }
    return rep;
}

namespace {

Matrix<ZModPr> mat_pow_mpz(Matrix<ZModPr> base, mpz_class e) {
    RANKIN_CHECK(e >= 0, "mat_pow_mpz: negative exponent");
    Matrix<ZModPr> acc = Matrix<ZModPr>::identity(base.rows(), base.at(0, 0));
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return acc;
}

}  // namespace

OrdinaryProjection ordinary_projector(const std::vector<ModularFormQExp<ZModPr>>& basis, long p) {
    RANKIN_CHECK(!basis.empty(), "ordinary_projector: empty basis");
    RANKIN_CHECK(is_prime_l(p), "ordinary_projector: p must be prime");
    long d = (long)basis.size();
    ZModPr ex = basis[0].coeffs.exemplar();
    RANKIN_CHECK(ex.p() == p, "ordinary_projector: coefficient ring at the wrong prime");
    long r = ex.r();
    long w = basis[0].weight;
    long T = basis[0].precision();
    for (const auto& f : basis) {
        RANKIN_CHECK(f.weight == w, "ordinary_projector: mixed weights");
        ZModPr fx = f.coeffs.exemplar();
        RANKIN_CHECK(fx.p() == p && fx.r() == r, "ordinary_projector: mixed coefficient rings");
        T = std::min(T, f.precision());
    }
    long Tu = (T - 1) / p + 1;
    RANKIN_CHECK(Tu >= d, "ordinary_projector: insufficient q-precision to represent the operator");

    Matrix<ZModPr> A(Tu, d, ex);
    for (long n = 0; n < Tu; ++n)
        for (long j = 0; j < d; ++j) A.at(n, j) = basis[(size_t)j].an(n);
    ZmodSnf S = snf_zmod(A);
    RANKIN_CHECK((long)S.pivots.size() == d && [&] {
        for (long e : S.pivots)
            if (e != 0) return false;
        return true;
    }(),
                 "ordinary_projector: expansions do not pin the operator down uniquely");

    Matrix<ZModPr> M(d, d, ex);
    for (long i = 0; i < d; ++i) {
        Matrix<ZModPr> b(Tu, 1, ex);
        for (long n = 0; n < Tu; ++n) b.at(n, 0) = basis[(size_t)i].an(n * p);
        ZmodSolve sol = zmod_solve(S, b);
        RANKIN_CHECK(sol.consistent, "ordinary_projector: span is not stable under the operator");
        for (long j = 0; j < d; ++j) M.at(j, i) = sol.x.at(j, 0);
    }

    // The exponent clears the nilpotent part (depth at most d r) and is a
    // multiple of the order of every invertible matrix mod p^r, so the power
    // is independent of how the two generalized eigenspaces sit inside M.
    mpz_class E = pow_z(p, (unsigned long)((r - 1) * d * d));
    mpz_class pd = pow_z(p, (unsigned long)d);
    for (long i = 0; i < d; ++i) E *= pd - pow_z(p, (unsigned long)i);
    Matrix<ZModPr> e = mat_pow_mpz(M, E * d * r);
    RANKIN_CHECK(e * e == e, "ordinary_projector: the power failed to stabilise");
    RANKIN_CHECK(e * M == M * e, "ordinary_projector: projector does not commute");

    ZmodSnf Se = snf_zmod(e);
    long rank = 0;
    for (long piv : Se.pivots) {
        RANKIN_CHECK(piv == 0 || piv == r, "ordinary_projector: non-idempotent pivot");
        if (piv == 0) ++rank;
    }

    std::vector<TruncSeries<ZModPr>> image;
    image.reserve((size_t)d);
    for (long i = 0; i < d; ++i) {
        TruncSeries<ZModPr> acc(T, ex);
        for (long j = 0; j < d; ++j) acc = acc + basis[(size_t)j].coeffs.truncate(T) * e.at(j, i);
        image.push_back(std::move(acc));
    }
    return {M, e, rank, std::move(image)};
}

ZModPr hecke_unit_root(long p, long r, const mpz_class& ap, const mpz_class& eps_p, long w) {
    RANKIN_CHECK(is_prime_l(p) && p >= 3 && r >= 1 && w >= 2, "hecke_unit_root: bad parameters");
    RANKIN_CHECK(ap % p != 0, "hecke_unit_root: a_p must be a unit (the form must be ordinary)");
    RANKIN_CHECK(eps_p % p != 0, "hecke_unit_root: nebentypus value must be a unit");
    ZModPr a = zmod_from_rational(p, r, mpq_class(ap));
    ZModPr cc = zmod_from_rational(p, r, mpq_class(eps_p * pow_z(p, (unsigned long)(w - 1))));
    ZModPr x = a;
    for (long it = 0; it < r + 2; ++it) {
        ZModPr fx = x * x - a * x + cc;
        ZModPr dfx = x + x - a;
        x = x - fx * dfx.inv();
    }
    ZModPr fx = x * x - a * x + cc;
    RANKIN_CHECK(fx.is_zero(), "hecke_unit_root: lifting failed");
    RANKIN_CHECK(x.valuation() == 0, "hecke_unit_root: root is not a unit");
    return x;
}

PStabilization stabilization_maps(long p, long w, long r, const mpz_class& ap, long eps_p) {
    RANKIN_CHECK(is_prime_l(p) && w >= 2 && r >= w, "stabilization_maps: bad parameters");
    mpz_class pw1 = pow_z(p, (unsigned long)(w - 1));
    mpz_class pw2 = pow_z(p, (unsigned long)(w - 2));
    mpq_class z(0);
    Matrix<mpq_class> r1(1, 2, z), r2(1, 2, z), c1(2, 1, z), c2(2, 1, z);
    r1.at(0, 0) = mpq_class(p + 1);
    r1.at(0, 1) = mpq_class(ap) / mpq_class(pw1);
    r2.at(0, 0) = mpq_class(ap) / mpq_class(eps_p);  // adjoint to the first pushforward
    r2.at(0, 1) = frac(p + 1, p);
    c1.at(0, 0) = 1;
    c2.at(1, 0) = mpq_class(pw1);

    ZModPr alpha = hecke_unit_root(p, r, ap, eps_p, w);
    ZModPr beta = alpha.make(ap) - alpha;
    // (Pr^alpha)_* of the second pullback, once through the matrix entries and
    // once as alpha - beta/p directly; beta/p^{w-1} is a unit, so the collapse
    // scalar keeps r - 1 exact digits
    ZModPr via_maps = alpha.make(ap) - beta.divide_by_p_pow(w - 1) * alpha.make(pw2 * (p + 1));
    ZModPr direct = alpha - beta.divide_by_p_pow(1);
    ZModPr collapse = direct.reduce_precision(r - 1);
    RANKIN_CHECK(via_maps.reduce_precision(r - 1) == collapse,
                 "stabilization_maps: collapse scalar mismatch");
    RANKIN_CHECK(collapse.valuation() == 0, "stabilization_maps: collapse scalar must be a unit");
    return {p, w, r1, r2, c1, c2, alpha, beta, collapse};
}

DirichletChar NewformData::nebentypus() const { return DirichletChar(char_modulus, char_exponents); }

NewformData load_newform(const std::string& path) {
    std::ifstream in(path);
    RANKIN_CHECK(in.good(), "load_newform: cannot open " + path);
    NewformData f;
    std::map<long, long> first_line;
    std::string line;
    long lineno = 0;
    bool saw_label = false, saw_weight = false, saw_level = false, saw_char = false;
    auto where = [&] { return path + ":" + std::to_string(lineno); };
    auto parse_z = [&](const std::string& s) {
        bool ok = !s.empty() && s != "-" &&
                  s.find_first_not_of("0123456789", s[0] == '-' ? 1 : 0) == std::string::npos;
        RANKIN_CHECK(ok, "load_newform: bad integer '" + s + "' at " + where());
        return mpz_class(s);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;
        if (key == "label") {
            RANKIN_CHECK(!saw_label && (ss >> f.label), "load_newform: bad label line at " + where());
            saw_label = true;
        } else if (key == "weight") {
            RANKIN_CHECK(!saw_weight && (ss >> f.weight) && f.weight >= 1,
                         "load_newform: bad weight line at " + where());
            saw_weight = true;
        } else if (key == "level") {
            RANKIN_CHECK(!saw_level && (ss >> f.level) && f.level >= 1,
                         "load_newform: bad level line at " + where());
            saw_level = true;
        } else if (key == "char") {
            RANKIN_CHECK(!saw_char && (ss >> f.char_modulus) && f.char_modulus >= 1,
                         "load_newform: bad char line at " + where());
            std::string list;
            if (ss >> list) {
                std::istringstream ls(list);
                std::string part;
                while (std::getline(ls, part, ';')) {
                    std::istringstream ps(part);
                    long e = 0;
                    std::string junk;
                    RANKIN_CHECK((ps >> e) && !(ps >> junk),
                                 "load_newform: bad exponent '" + part + "' at " + where());
                    f.char_exponents.push_back(e);
                }
            }
            saw_char = true;
        } else if (key == "an") {
            long n = 0;
            std::string val;
            RANKIN_CHECK((ss >> n >> val) && n >= 1, "load_newform: bad an line at " + where());
            auto slash = val.find('/');
            RANKIN_CHECK(slash != std::string::npos && slash > 0 && slash + 1 < val.size() &&
                             val.find('/', slash + 1) == std::string::npos,
                         "load_newform: coefficient must be written num/den at " + where());
            mpz_class num = parse_z(val.substr(0, slash));
            mpz_class den = parse_z(val.substr(slash + 1));
            RANKIN_CHECK(den > 0, "load_newform: denominator must be positive at " + where());
            auto prev = first_line.find(n);
            if (prev != first_line.end())
                fail("load_newform: duplicate coefficient a_" + std::to_string(n) + " at lines " +
                     std::to_string(prev->second) + " and " + std::to_string(lineno) + " of " + path);
            first_line.emplace(n, lineno);
            mpq_class v(num, den);
            v.canonicalize();
            f.an.emplace(n, v);
        } else {
            fail("load_newform: unrecognised key '" + key + "' at " + where());
        }
        std::string extra;
        RANKIN_CHECK(!(ss >> extra), "load_newform: trailing data at " + where());
    }
    RANKIN_CHECK(saw_label && saw_weight && saw_level && saw_char,
                 "load_newform: incomplete header in " + path);
    RANKIN_CHECK(f.level % f.char_modulus == 0,
                 "load_newform: character modulus must divide the level in " + path);
    (void)f.nebentypus();  // validates the exponent list against the unit group
    return f;
}

std::string emit_newform(const NewformData& f) {
    std::ostringstream os;
    os << "label " << f.label << "\n";
    os << "weight " << f.weight << "\n";
    os << "level " << f.level << "\n";
    os << "char " << f.char_modulus;
    for (size_t i = 0; i < f.char_exponents.size(); ++i)
        os << (i == 0 ? " " : ";") << f.char_exponents[i];
    os << "\n";
    for (const auto& [n, v] : f.an) os << "an " << n << " " << v.get_num() << "/" << v.get_den() << "\n";
    return os.str();
}

ModularFormQExp<mpq_class> newform_qexp(const NewformData& f, long T) {
    RANKIN_CHECK(T >= 2, "newform_qexp: need at least one coefficient");
    std::vector<mpq_class> c((size_t)T, mpq_class(0));
    for (long n = 1; n < T; ++n) {
        auto it = f.an.find(n);
        RANKIN_CHECK(it != f.an.end(), "newform_qexp: coefficient a_" + std::to_string(n) + " missing");
        c[(size_t)n] = it->second;
    }
    return ModularFormQExp<mpq_class>(f.level, f.weight, f.nebentypus(),
                                      TruncSeries<mpq_class>(std::move(c)));
}

ModularFormQExp<ZModPr> newform_qexp_zmod(const NewformData& f, long p, long r, long T) {
    ModularFormQExp<mpq_class> fq = newform_qexp(f, T);
    std::vector<ZModPr> c;
    c.reserve((size_t)T);
    for (long n = 0; n < T; ++n) c.push_back(zmod_from_rational(p, r, fq.an(n)));
    return ModularFormQExp<ZModPr>(f.level, f.weight, fq.eps, TruncSeries<ZModPr>(std::move(c)));
}

namespace {

mpz_class det2(const Matrix<mpz_class>& g) {
    return g.at(0, 0) * g.at(1, 1) - g.at(0, 1) * g.at(1, 0);
}

Matrix<mpz_class> adjugate2(const Matrix<mpz_class>& g) {
    Matrix<mpz_class> a(2, 2, mpz_class(0));
    a.at(0, 0) = g.at(1, 1);
    a.at(0, 1) = -g.at(0, 1);
    a.at(1, 0) = -g.at(1, 0);
    a.at(1, 1) = g.at(0, 0);
    return a;
}

Matrix<mpz_class> primitive2(Matrix<mpz_class> g) {
    mpz_class c(0);
    for (long i = 0; i < 2; ++i)
        for (long j = 0; j < 2; ++j) c = gcd(c, g.at(i, j));
    RANKIN_CHECK(c != 0, "ALGroupElem: zero matrix");
    if (c > 1)
        for (long i = 0; i < 2; ++i)
            for (long j = 0; j < 2; ++j) g.at(i, j) /= c;
    return g;
}

long residue(const mpz_class& x, long N) {
    mpz_class v = ((x % N) + N) % N;
    return v.get_si();
}

// det 1 and congruent to +-(1 *; 0 1) mod N
bool structure_member(const Matrix<mpz_class>& g, long N) {
    if (det2(g) != 1) return false;
    if (residue(g.at(1, 0), N) != 0) return false;
    long a = residue(g.at(0, 0), N), d = residue(g.at(1, 1), N);
    return (a == 1 % N && d == 1 % N) || (a == (N - 1) % N && d == (N - 1) % N);
}

long crt2(long a1, long m1, long a2, long m2) {
    long a = ((a1 % m1) + m1) % m1;
    long b = ((a2 % m2) + m2) % m2;
    if (m2 == 1) return a;
    long k = ((b - a) % m2 + m2) % m2 * invmod_l(m1 % m2, m2) % m2;
    return a + m1 * k;
}

}  // namespace

ALGroupElem::ALGroupElem(long N, Matrix<mpz_class> g) : N_(N), g_(std::move(g)) {
    RANKIN_CHECK(N >= 1, "ALGroupElem: bad level");
    RANKIN_CHECK(g_.rows() == 2 && g_.cols() == 2, "ALGroupElem: need a 2 x 2 matrix");
    RANKIN_CHECK(det2(g_) > 0, "ALGroupElem: determinant must be positive");
    g_ = primitive2(std::move(g_));
    Matrix<mpz_class> t1({{mpz_class(1), mpz_class(1)}, {mpz_class(0), mpz_class(1)}});
    Matrix<mpz_class> t2({{mpz_class(1), mpz_class(0)}, {mpz_class(N), mpz_class(1)}});
    Matrix<mpz_class> adj = adjugate2(g_);
    for (const auto& gen : {t1, t2}) {
        RANKIN_CHECK(structure_member(primitive2(g_ * gen * adj), N) &&
                         structure_member(primitive2(adj * gen * g_), N),
                     "ALGroupElem: matrix does not normalise the level structure");
    }
}

ALGroupElem ALGroupElem::identity(long N) {
    return ALGroupElem(N, Matrix<mpz_class>::identity(2, mpz_class(0)));
}

ALGroupElem ALGroupElem::diamond(long N, long Q, long x) {
    RANKIN_CHECK(N >= 1 && Q >= 1 && N % Q == 0 && gcd_l(Q, N / Q) == 1,
                 "ALGroupElem::diamond: Q must be a unitary divisor of N");
    if (Q == 1) return identity(N);
    long xm = ((x % Q) + Q) % Q;
    RANKIN_CHECK(gcd_l(xm, Q) == 1, "ALGroupElem::diamond: x must be a unit mod Q");
    long d0 = crt2(xm, Q, 1, N / Q);
    RANKIN_CHECK(d0 >= 1, "ALGroupElem::diamond: construction failed");
    long a = invmod_l(d0 % N, N);
    mpz_class b = (mpz_class(a) * d0 - 1) / N;
    Matrix<mpz_class> g({{mpz_class(a), b}, {mpz_class(N), mpz_class(d0)}});
    return ALGroupElem(N, g);
}

ALGroupElem ALGroupElem::atkin_lehner(long N, long Q) {
    RANKIN_CHECK(N >= 1 && Q >= 1 && N % Q == 0 && gcd_l(Q, N / Q) == 1,
                 "ALGroupElem::atkin_lehner: Q must be a unitary divisor of N");
    long R = N / Q;
    // (Q x, y; N z, Q w) of determinant Q with Q x = 1 mod R and y = -1 mod Q
    long x = (R == 1) ? 0 : invmod_l(Q % R, R);
    long y = -1;
    long w = (R == 1) ? 0 : 1;
    long z = (R == 1) ? 1 : (1 - Q * x * w) / R;
    Matrix<mpz_class> g({{mpz_class(Q) * x, mpz_class(y)}, {mpz_class(N) * z, mpz_class(Q) * w}});
    RANKIN_CHECK(det2(g) == Q, "ALGroupElem::atkin_lehner: construction failed");
    return ALGroupElem(N, g);
}

ALGroupElem ALGroupElem::operator*(const ALGroupElem& o) const {
    RANKIN_CHECK(N_ == o.N_, "ALGroupElem: level mismatch");
    return ALGroupElem(N_, g_ * o.g_);
}

bool ALGroupElem::operator==(const ALGroupElem& o) const {
    RANKIN_CHECK(N_ == o.N_, "ALGroupElem: level mismatch");
    Matrix<mpz_class> X = primitive2(g_ * adjugate2(o.g_));
    return structure_member(X, N_);
}

namespace {

std::string show2(const Matrix<mpz_class>& g) {
    std::ostringstream os;
    os << "[[" << g.at(0, 0) << "," << g.at(0, 1) << "],[" << g.at(1, 0) << "," << g.at(1, 1) << "]]";
    return os.str();
}

}  // namespace

ALRelationsReport atkin_lehner_relations_check(long N, long Q, bool perturb) {
    RANKIN_CHECK(N >= 2 && Q >= 2 && N % Q == 0 && gcd_l(Q, N / Q) == 1,
                 "atkin_lehner_relations_check: Q must be a unitary divisor of N with Q > 1");
    long R = N / Q;
    RANKIN_CHECK(!perturb || R >= 3, "atkin_lehner_relations_check: no wrong diamond exists mod " +
                                         std::to_string(R));
    ALRelationsReport rep;
    ALGroupElem W = ALGroupElem::atkin_lehner(N, Q);

    ALGroupElem sq = W * W;
    ALGroupElem sq_rhs =
        ALGroupElem::diamond(N, R, perturb ? 2 * Q : Q) * ALGroupElem::diamond(N, Q, Q - 1);
    rep.square = sq == sq_rhs;
    rep.witness = "W_" + std::to_string(Q) + "^2 = " + show2(sq.rep()) + " vs " + show2(sq_rhs.rep());

    rep.conjugation = true;
    for (long dd = 1; dd < Q; ++dd) {
        if (gcd_l(dd, Q) != 1) continue;
        for (long dp = 1; dp <= R; ++dp) {
            if (gcd_l(dp, R) != 1) continue;
            ALGroupElem lhs = ALGroupElem::diamond(N, Q, dd) * ALGroupElem::diamond(N, R, dp) * W;
            ALGroupElem rhs =
                W * ALGroupElem::diamond(N, Q, invmod_l(dd, Q)) * ALGroupElem::diamond(N, R, dp);
            if (!(lhs == rhs)) rep.conjugation = false;
        }
    }

    rep.composition = true;
    for (long Qp = 1; Qp <= R; ++Qp) {
        if (R % Qp != 0 || gcd_l(Qp, R / Qp) != 1) continue;
        ALGroupElem lhs = ALGroupElem::atkin_lehner(N, Q * Qp);
        ALGroupElem rhs = ALGroupElem::diamond(N, Q, Qp) * W * ALGroupElem::atkin_lehner(N, Qp);
        if (!(lhs == rhs)) rep.composition = false;
    }
    return rep;
}

}  // namespace rankin
