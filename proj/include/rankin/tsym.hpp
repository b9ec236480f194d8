#pragma once

#include "rankin/ring_traits.hpp"
#include "rankin/util.hpp"
#include "rankin/zmod.hpp"

#include <array>
#include <map>
#include <utility>
#include <vector>

namespace rankin {

// Symmetric tensors of a rank-2 module in the divided-power basis
// x^{[i]} y^{[k-i]}.  The graded product is the shuffle (symmetrized tensor)
// product, so x^{[m]} x^{[n]} = C(m+n, m) x^{[m+n]}: no denominators appear,
// which is the point of working with divided powers mod p^r.
template <class R>
class SymTensor {
public:
    SymTensor(long k, std::vector<R> coeffs) : k_(k), c_(std::move(coeffs)) {
        RANKIN_CHECK(k >= 0 && (long)c_.size() == k + 1, "SymTensor: bad coefficient count");
    }

    static SymTensor zero(long k, const R& ex) {
        return SymTensor(k, std::vector<R>((size_t)k + 1, zero_like(ex)));
    }

    // the basis element x^{[i]} y^{[k-i]}
    static SymTensor basis(long k, long i, const R& ex) {
        auto t = zero(k, ex);
        RANKIN_CHECK(i >= 0 && i <= k, "SymTensor::basis: index out of range");
        t.c_[(size_t)i] = one_like(ex);
        return t;
    }

    // divided power (v1 x + v2 y)^{[k]}; coefficients are v1^i v2^{k-i}
    static SymTensor power(long k, const R& v1, const R& v2) {
        auto t = zero(k, v1);
        for (long i = 0; i <= k; ++i) {
            R m = one_like(v1);
            for (long s = 0; s < i; ++s) m = m * v1;
            for (long s = i; s < k; ++s) m = m * v2;
            t.c_[(size_t)i] = m;
        }
        return t;
    }

    long degree() const { return k_; }
    const R& coeff(long i) const { return c_.at((size_t)i); }
    R exemplar() const { return c_.at(0); }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!is_zero_elem(x)) return false;
        return true;
    }

    SymTensor operator+(const SymTensor& o) const {
        RANKIN_CHECK(k_ == o.k_, "SymTensor: degree mismatch in +");
        auto t = *this;
        for (size_t i = 0; i < c_.size(); ++i) t.c_[i] = t.c_[i] + o.c_[i];
        return t;
    }
    SymTensor operator-(const SymTensor& o) const {
        RANKIN_CHECK(k_ == o.k_, "SymTensor: degree mismatch in -");
        auto t = *this;
        for (size_t i = 0; i < c_.size(); ++i) t.c_[i] = t.c_[i] - o.c_[i];
        return t;
    }
    SymTensor scale(const R& s) const {
        auto t = *this;
        for (auto& x : t.c_) x = x * s;
        return t;
    }

    SymTensor operator*(const SymTensor& o) const {
        long K = k_ + o.k_;
        auto t = zero(K, exemplar());
        for (long i = 0; i <= k_; ++i) {
            if (is_zero_elem(c_[(size_t)i])) continue;
            for (long u = 0; u <= o.k_; ++u) {
                long s = i + u;
                mpz_class b = binomial_z(s, i) * binomial_z(K - s, k_ - i);
                t.c_[(size_t)s] = t.c_[(size_t)s] +
                                  c_[(size_t)i] * o.c_[(size_t)u] * scalar_like(c_[(size_t)i], b);
            }
        }
        return t;
    }

    bool operator==(const SymTensor& o) const {
        if (k_ != o.k_) return false;
        for (size_t i = 0; i < c_.size(); ++i) {
            R d = c_[i] - o.c_[i];
            if (!is_zero_elem(d)) return false;
        }
        return true;
    }
    bool operator!=(const SymTensor& o) const { return !(*this == o); }

private:
    long k_;
    std::vector<R> c_;
};

// External tensor product of two SymTensor factors, with an integer twist tag
// recording the power of the cyclotomic character carried along.  Coefficients
// are stored at (i, l) = (x-degree in factor 1, x-degree in factor 2).
template <class R>
class BiSymTensor {
public:
    BiSymTensor(long k1, long k2, long twist, std::vector<R> coeffs)
        : k1_(k1), k2_(k2), tw_(twist), c_(std::move(coeffs)) {
        RANKIN_CHECK(k1 >= 0 && k2 >= 0 && (long)c_.size() == (k1 + 1) * (k2 + 1),
                     "BiSymTensor: bad coefficient count");
    }

    static BiSymTensor zero(long k1, long k2, long twist, const R& ex) {
        return BiSymTensor(k1, k2, twist,
                           std::vector<R>((size_t)((k1 + 1) * (k2 + 1)), zero_like(ex)));
    }

    static BiSymTensor outer(const SymTensor<R>& a, const SymTensor<R>& b, long twist) {
        auto t = zero(a.degree(), b.degree(), twist, a.exemplar());
        for (long i = 0; i <= a.degree(); ++i)
            for (long l = 0; l <= b.degree(); ++l) t.at(i, l) = a.coeff(i) * b.coeff(l);
        return t;
    }

    long degree1() const { return k1_; }
    long degree2() const { return k2_; }
    long twist() const { return tw_; }
    R exemplar() const { return c_.at(0); }

    R& at(long i, long l) { return c_.at((size_t)(i * (k2_ + 1) + l)); }
    const R& at(long i, long l) const { return c_.at((size_t)(i * (k2_ + 1) + l)); }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!is_zero_elem(x)) return false;
        return true;
    }

    BiSymTensor operator+(const BiSymTensor& o) const {
        RANKIN_CHECK(k1_ == o.k1_ && k2_ == o.k2_ && tw_ == o.tw_,
                     "BiSymTensor: shape mismatch in +");
        auto t = *this;
        for (size_t i = 0; i < c_.size(); ++i) t.c_[i] = t.c_[i] + o.c_[i];
        return t;
    }
    BiSymTensor operator-(const BiSymTensor& o) const {
        RANKIN_CHECK(k1_ == o.k1_ && k2_ == o.k2_ && tw_ == o.tw_,
                     "BiSymTensor: shape mismatch in -");
        auto t = *this;
        for (size_t i = 0; i < c_.size(); ++i) t.c_[i] = t.c_[i] - o.c_[i];
        return t;
    }
    BiSymTensor scale(const R& s) const {
        auto t = *this;
        for (auto& x : t.c_) x = x * s;
        return t;
    }

    // componentwise product (factor by factor); twists add
    BiSymTensor operator*(const BiSymTensor& o) const {
        long K1 = k1_ + o.k1_, K2 = k2_ + o.k2_;
        auto t = zero(K1, K2, tw_ + o.tw_, exemplar());
        for (long i = 0; i <= k1_; ++i)
            for (long l = 0; l <= k2_; ++l) {
                if (is_zero_elem(at(i, l))) continue;
                for (long u = 0; u <= o.k1_; ++u)
                    for (long v = 0; v <= o.k2_; ++v) {
                        long s = i + u, w = l + v;
                        mpz_class b = binomial_z(s, i) * binomial_z(K1 - s, k1_ - i) *
                                      binomial_z(w, l) * binomial_z(K2 - w, k2_ - l);
                        t.at(s, w) = t.at(s, w) + at(i, l) * o.at(u, v) * scalar_like(at(i, l), b);
                    }
            }
        return t;
    }

    bool operator==(const BiSymTensor& o) const {
        if (k1_ != o.k1_ || k2_ != o.k2_ || tw_ != o.tw_) return false;
        for (size_t i = 0; i < c_.size(); ++i) {
            R d = c_[i] - o.c_[i];
            if (!is_zero_elem(d)) return false;
        }
        return true;
    }
    bool operator!=(const BiSymTensor& o) const { return !(*this == o); }

private:
    long k1_, k2_, tw_;
    std::vector<R> c_;
};

// intertwining element sum_i (-1)^i i!(j-i)! x^{[i]}y^{[j-i]} (x) y^{[i]}x^{[j-i]},
// carrying twist -j
template <class R>
BiSymTensor<R> clebsch_gordan_cup(long j, const R& ex) {
    auto t = BiSymTensor<R>::zero(j, j, -j, ex);
    for (long i = 0; i <= j; ++i) {
        mpz_class c = factorial_z(i) * factorial_z(j - i);
        if (i % 2 == 1) c = -c;
        t.at(i, j - i) = scalar_like(ex, c);
    }
    return t;
}

// comultiplication component TSym^{k1+k2} -> TSym^{k1} (x) TSym^{k2}
// (dual to the shuffle product, so basis elements split with coefficient 1)
template <class R>
BiSymTensor<R> tensor_split(const SymTensor<R>& t, long k1, long k2) {
    RANKIN_CHECK(k1 >= 0 && k2 >= 0 && t.degree() == k1 + k2,
                 "tensor_split: degrees do not add up");
    auto out = BiSymTensor<R>::zero(k1, k2, 0, t.exemplar());
    for (long i = 0; i <= t.degree(); ++i) {
        long lo = std::max(0L, i - k2), hi = std::min(k1, i);
        for (long a = lo; a <= hi; ++a) out.at(a, i - a) = out.at(a, i - a) + t.coeff(i);
    }
    return out;
}

// Clebsch-Gordan embedding TSym^{k+k'-2j} -> TSym^k (x) TSym^{k'} (-j):
// split into bidegree (k-j, k'-j), then multiply by the cup element
template <class R>
BiSymTensor<R> clebsch_gordan_embed(const SymTensor<R>& t, long k, long kp, long j) {
    RANKIN_CHECK(k >= 0 && kp >= 0 && j >= 0 && j <= std::min(k, kp),
                 "clebsch_gordan_embed: need 0 <= j <= min(k, k')");
    RANKIN_CHECK(t.degree() == k + kp - 2 * j, "clebsch_gordan_embed: wrong input degree");
    return tensor_split(t, k - j, kp - j) * clebsch_gordan_cup(j, t.exemplar());
}

// Substitute x -> x - a y in the second factor, then pass to the quotient by
// all monomials with positive x-degree in either factor; returns the
// coefficient of y^{[j1]} (x) y^{[j2]}.  On basis elements the substitution is
// x^{[l]} y^{[m]} -> sum_s (-a)^{l-s} C(m + l - s, l - s) x^{[s]} y^{[m+l-s]},
// and only the s = 0 part survives the quotient.
template <class R>
R twist_projection(const BiSymTensor<R>& x, const R& a) {
    R out = zero_like(a);
    for (long l = 0; l <= x.degree2(); ++l) {
        const R& c = x.at(0, l);
        if (is_zero_elem(c)) continue;
        R am = one_like(a);
        for (long s = 0; s < l; ++s) am = am * a;
        if (l % 2 == 1) am = zero_like(a) - am;
        out = out + c * am * scalar_like(a, binomial_z(x.degree2(), l));
    }
    return out;
}

// Group ring of (Z/p^r)^2 over Z/p^r: the finite model of the Iwasawa algebra
// of the rank-2 Tate module.  Convolution is over the additive group.
class GroupRingElem {
public:
    using Key = std::array<long, 2>;

    GroupRingElem(long p, long r) : p_(p), r_(r), q_(1) {
        RANKIN_CHECK(p >= 2 && r >= 1, "GroupRingElem: bad parameters");
        for (long i = 0; i < r; ++i) q_ *= p;
    }

    static GroupRingElem delta(long p, long r, Key v);

    long p() const { return p_; }
    long r() const { return r_; }
    long modulus() const { return q_; }

    void add_term(Key v, const ZModPr& c);
    const std::map<Key, ZModPr>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    GroupRingElem operator+(const GroupRingElem& o) const;
    GroupRingElem operator-(const GroupRingElem& o) const;
    GroupRingElem operator*(const GroupRingElem& o) const;
    GroupRingElem scale(const ZModPr& s) const;
    bool operator==(const GroupRingElem& o) const;

private:
    ZModPr exemplar() const { return ZModPr(p_, r_, 0); }
    void check_compatible(const GroupRingElem& o) const;

    long p_, r_, q_;
    std::map<Key, ZModPr> t_;
};

// linear extension of [v] -> v^{[k]}
SymTensor<ZModPr> divided_power_moment(const GroupRingElem& g, long k);

// Element of (group ring) (x) TSym^j: the target of the one-sided moment map.
class GroupSymElem {
public:
    GroupSymElem(long p, long r, long j) : p_(p), r_(r), j_(j) {}

    long p() const { return p_; }
    long r() const { return r_; }
    long j() const { return j_; }
    void add_term(GroupRingElem::Key v, const SymTensor<ZModPr>& s);
    const std::map<GroupRingElem::Key, SymTensor<ZModPr>>& terms() const { return t_; }

private:
    long p_, r_, j_;
    std::map<GroupRingElem::Key, SymTensor<ZModPr>> t_;
};

// comultiply, then take mom^j in the second slot: [v] -> [v] (x) v^{[j]}
GroupSymElem id_tensor_moment(const GroupRingElem& g, long j);

// collapse (group ring) (x) TSym^j -> TSym^k via mom^{k-j} on the group slot
// followed by the graded product
SymTensor<ZModPr> moment_times_id(const GroupSymElem& x, long k);

// Element of ((group ring) (x) TSym^j)^{(x) 2} with a twist tag: the target of
// the group-level Clebsch-Gordan map.  Keys are pairs of group elements.
class GroupBiTensorElem {
public:
    using Key = std::array<long, 4>;

    GroupBiTensorElem(long p, long r, long j) : p_(p), r_(r), j_(j) {}

    long p() const { return p_; }
    long r() const { return r_; }
    long j() const { return j_; }
    void add_term(Key vw, const BiSymTensor<ZModPr>& m);
    const std::map<Key, BiSymTensor<ZModPr>>& terms() const { return t_; }

    GroupBiTensorElem operator+(const GroupBiTensorElem& o) const;
    GroupBiTensorElem scale(const ZModPr& s) const;

private:
    long p_, r_, j_;
    std::map<Key, BiSymTensor<ZModPr>> t_;
};

// comultiply the group ring and cup with the degree-(j, j) intertwiner:
// [v] -> ([v] (x) [v]) * cup_j, twist -j
GroupBiTensorElem iwasawa_cg(const GroupRingElem& g, long j);

// apply (mom^{k-j} . id) (x) (mom^{k'-j} . id)
BiSymTensor<ZModPr> moment_pair(const GroupBiTensorElem& x, long k, long kp);

}  // namespace rankin
