#pragma once

#include "rankin/util.hpp"

#include <gmpxx.h>

#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace rankin {

// Multivariate Laurent polynomials over Z.  Variables are fixed up front by a
// ring descriptor; only variables flagged invertible may carry negative
// exponents.  Terms live in a map keyed by exponent vector, so the zero
// coefficient is never stored and printing order is canonical.
struct LaurentRing {
    std::vector<std::string> vars;
    std::vector<bool> invertible;

    LaurentRing(std::vector<std::string> names, std::vector<bool> inv)
        : vars(std::move(names)), invertible(std::move(inv)) {
        RANKIN_CHECK(vars.size() == invertible.size(), "LaurentRing: size mismatch");
    }

    size_t arity() const { return vars.size(); }
    size_t index_of(const std::string& name) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return i;
        fail("LaurentRing: no variable named " + name);
    }
    bool operator==(const LaurentRing& o) const {
        return vars == o.vars && invertible == o.invertible;
    }
};

using LaurentRingPtr = std::shared_ptr<const LaurentRing>;

inline LaurentRingPtr make_laurent_ring(std::vector<std::string> names, std::vector<bool> inv) {
    return std::make_shared<const LaurentRing>(std::move(names), std::move(inv));
}

class LaurentPoly {
public:
    using Exps = std::vector<int>;

    explicit LaurentPoly(LaurentRingPtr ring) : ring_(std::move(ring)) {
        RANKIN_CHECK(ring_ != nullptr, "LaurentPoly: null ring");
    }

    static LaurentPoly constant(const LaurentRingPtr& ring, const mpz_class& c) {
        LaurentPoly f(ring);
        f.add_term(Exps(ring->arity(), 0), c);
        return f;
    }
    static LaurentPoly monomial(const LaurentRingPtr& ring, const Exps& e, const mpz_class& c) {
        LaurentPoly f(ring);
        f.add_term(e, c);
        return f;
    }
    static LaurentPoly gen(const LaurentRingPtr& ring, const std::string& name, int power = 1) {
        Exps e(ring->arity(), 0);
        e[ring->index_of(name)] = power;
        return monomial(ring, e, 1);
    }

    const LaurentRingPtr& ring() const { return ring_; }
    const std::map<Exps, mpz_class>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t num_terms() const { return t_.size(); }

    mpz_class coeff_of(const Exps& e) const {
        auto it = t_.find(e);
        return it == t_.end() ? mpz_class(0) : it->second;
    }

    void add_term(const Exps& e, const mpz_class& c) {
        RANKIN_CHECK(e.size() == ring_->arity(), "LaurentPoly: exponent arity mismatch");
        if (c == 0) return;
        for (size_t i = 0; i < e.size(); ++i)
            RANKIN_CHECK(e[i] >= 0 || ring_->invertible[i],
                         "LaurentPoly: negative power of non-invertible " + ring_->vars[i]);
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }

    LaurentPoly operator+(const LaurentPoly& o) const {
        check_ring(o);
        LaurentPoly out = *this;
        for (const auto& [e, c] : o.t_) out.add_term(e, c);
        return out;
    }
    LaurentPoly operator-(const LaurentPoly& o) const {
        check_ring(o);
        LaurentPoly out = *this;
        for (const auto& [e, c] : o.t_) out.add_term(e, -c);
        return out;
    }
    LaurentPoly operator-() const {
        LaurentPoly out(ring_);
        for (const auto& [e, c] : t_) out.t_.emplace(e, -c);
        return out;
    }
    LaurentPoly operator*(const LaurentPoly& o) const {
        check_ring(o);
        LaurentPoly out(ring_);
        for (const auto& [e1, c1] : t_)
            for (const auto& [e2, c2] : o.t_) {
                Exps e = e1;
                for (size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
                out.add_term(e, c1 * c2);
            }
        return out;
    }
    LaurentPoly operator*(const mpz_class& s) const {
        LaurentPoly out(ring_);
        if (s == 0) return out;
        for (const auto& [e, c] : t_) out.t_.emplace(e, c * s);
        return out;
    }
    LaurentPoly& operator+=(const LaurentPoly& o) {
        check_ring(o);
        for (const auto& [e, c] : o.t_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        check_ring(o);
        for (const auto& [e, c] : o.t_) add_term(e, -c);
        return *this;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    bool operator==(const LaurentPoly& o) const { return *ring_ == *o.ring_ && t_ == o.t_; }

    LaurentPoly pow(long n) const {
        RANKIN_CHECK(n >= 0, "LaurentPoly::pow: negative exponent");
        LaurentPoly out = constant(ring_, 1);
        LaurentPoly base = *this;
        while (n) {
            if (n & 1) out *= base;
            base *= base;
            n >>= 1;
        }
        return out;
    }

    // image under the ring map sending variable i to images[i]; a variable
    // occurring with a negative exponent must map to +-(monomial)
    LaurentPoly subst(const std::vector<LaurentPoly>& images) const {
        RANKIN_CHECK(images.size() == ring_->arity(), "LaurentPoly::subst: arity mismatch");
        const LaurentRingPtr& target = images.empty() ? ring_ : images[0].ring_;
        for (const auto& im : images) RANKIN_CHECK(*im.ring_ == *target, "LaurentPoly::subst: mixed targets");
        LaurentPoly out(target);
        for (const auto& [e, c] : t_) {
            LaurentPoly term = constant(target, c);
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (e[i] > 0) {
                    term *= images[i].pow(e[i]);
                } else {
                    term *= invert_unit_monomial(images[i]).pow(-(long)e[i]);
                }
            }
            out += term;
        }
        return out;
    }

    // twisted by the grading automorphism: each term picks up sigma^(sum_i w_i e_i)
    LaurentPoly grade_twist(size_t sigma_index, const std::vector<int>& weights) const {
        RANKIN_CHECK(sigma_index < ring_->arity(), "grade_twist: bad index");
        RANKIN_CHECK(weights.size() == ring_->arity(), "grade_twist: weight arity mismatch");
        LaurentPoly out(ring_);
        for (const auto& [e, c] : t_) {
            long d = 0;
            for (size_t i = 0; i < e.size(); ++i) d += (long)weights[i] * e[i];
            Exps e2 = e;
            e2[sigma_index] += (int)d;
            out.add_term(e2, c);
        }
        return out;
    }

    // exact rational evaluation; value 0 is rejected at a negative exponent
    mpq_class eval_q(const std::vector<mpq_class>& vals) const {
        RANKIN_CHECK(vals.size() == ring_->arity(), "LaurentPoly::eval_q: arity mismatch");
        mpq_class acc = 0;
        for (const auto& [e, c] : t_) {
            mpq_class term = c;
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                RANKIN_CHECK(e[i] > 0 || vals[i] != 0, "LaurentPoly::eval_q: zero at negative power");
                mpq_class b = vals[i];
                long k = e[i] > 0 ? e[i] : -(long)e[i];
                mpq_class pw = 1;
                for (long j = 0; j < k; ++j) pw *= b;
                term *= (e[i] > 0) ? pw : mpq_class(1) / pw;
            }
            acc += term;
        }
        return acc;
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : t_) {
            mpz_class a = c;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            std::string mono = monomial_str(e);
            if (mono.empty()) {
                os << a.get_str();
            } else {
                if (a != 1) os << a.get_str() << "*";
                os << mono;
            }
            first = false;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& f) { return os << f.str(); }

private:
    LaurentRingPtr ring_;
    std::map<Exps, mpz_class> t_;

    void check_ring(const LaurentPoly& o) const {
        RANKIN_CHECK(*ring_ == *o.ring_, "LaurentPoly: mixed rings");
    }

    std::string monomial_str(const Exps& e) const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!first) os << "*";
            os << ring_->vars[i];
            if (e[i] != 1) os << "^" << e[i];
            first = false;
        }
        return os.str();
    }

    static LaurentPoly invert_unit_monomial(const LaurentPoly& f) {
        RANKIN_CHECK(f.t_.size() == 1, "LaurentPoly: inverse needs a monomial");
        const auto& [e, c] = *f.t_.begin();
        RANKIN_CHECK(c == 1 || c == -1, "LaurentPoly: inverse needs unit coefficient");
        Exps einv(e.size());
        for (size_t i = 0; i < e.size(); ++i) einv[i] = -e[i];
        return monomial(f.ring_, einv, c);
    }
};

inline LaurentPoly operator*(const mpz_class& s, const LaurentPoly& f) { return f * s; }

inline LaurentPoly zero_like(const LaurentPoly& f) { return LaurentPoly(f.ring()); }
inline LaurentPoly one_like(const LaurentPoly& f) { return LaurentPoly::constant(f.ring(), 1); }
inline LaurentPoly scalar_like(const LaurentPoly& f, const mpz_class& n) {
    return LaurentPoly::constant(f.ring(), n);
}
inline bool is_zero_elem(const LaurentPoly& f) { return f.is_zero(); }

}  // namespace rankin
