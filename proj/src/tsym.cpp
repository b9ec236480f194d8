#include "rankin/tsym.hpp"

namespace rankin {

void GroupRingElem::check_compatible(const GroupRingElem& o) const {
    RANKIN_CHECK(p_ == o.p_ && r_ == o.r_, "GroupRingElem: mixed (p, r)");
}

GroupRingElem GroupRingElem::delta(long p, long r, Key v) {
    GroupRingElem g(p, r);
    g.add_term(v, ZModPr(p, r, 1));
    return g;
}

void GroupRingElem::add_term(Key v, const ZModPr& c) {
    v[0] = ((v[0] % q_) + q_) % q_;
    v[1] = ((v[1] % q_) + q_) % q_;
    auto it = t_.find(v);
    if (it == t_.end()) {
        if (!c.is_zero()) t_.emplace(v, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) t_.erase(it);
}

GroupRingElem GroupRingElem::operator+(const GroupRingElem& o) const {
    check_compatible(o);
    GroupRingElem g = *this;
    for (const auto& [v, c] : o.t_) g.add_term(v, c);
    return g;
}

GroupRingElem GroupRingElem::operator-(const GroupRingElem& o) const {
    check_compatible(o);
    GroupRingElem g = *this;
    for (const auto& [v, c] : o.t_) g.add_term(v, exemplar() - c);
    return g;
}

GroupRingElem GroupRingElem::operator*(const GroupRingElem& o) const {
    check_compatible(o);
    GroupRingElem g(p_, r_);
    for (const auto& [v, c] : t_)
        for (const auto& [w, d] : o.t_) g.add_term({v[0] + w[0], v[1] + w[1]}, c * d);
    return g;
}

GroupRingElem GroupRingElem::scale(const ZModPr& s) const {
    GroupRingElem g(p_, r_);
    for (const auto& [v, c] : t_) g.add_term(v, c * s);
    return g;
}

bool GroupRingElem::operator==(const GroupRingElem& o) const {
    check_compatible(o);
    return (*this - o).is_zero();
}

SymTensor<ZModPr> divided_power_moment(const GroupRingElem& g, long k) {
    ZModPr ex(g.p(), g.r(), 0);
    auto out = SymTensor<ZModPr>::zero(k, ex);
    for (const auto& [v, c] : g.terms())
        out = out + SymTensor<ZModPr>::power(k, ex.make(v[0]), ex.make(v[1])).scale(c);
    return out;
}

void GroupSymElem::add_term(GroupRingElem::Key v, const SymTensor<ZModPr>& s) {
    RANKIN_CHECK(s.degree() == j_, "GroupSymElem: degree mismatch");
    auto it = t_.find(v);
    if (it == t_.end()) {
        if (!s.is_zero()) t_.emplace(v, s);
        return;
    }
    it->second = it->second + s;
    if (it->second.is_zero()) t_.erase(it);
}

GroupSymElem id_tensor_moment(const GroupRingElem& g, long j) {
    ZModPr ex(g.p(), g.r(), 0);
    GroupSymElem out(g.p(), g.r(), j);
    for (const auto& [v, c] : g.terms())
        out.add_term(v, SymTensor<ZModPr>::power(j, ex.make(v[0]), ex.make(v[1])).scale(c));
    return out;
}

SymTensor<ZModPr> moment_times_id(const GroupSymElem& x, long k) {
    RANKIN_CHECK(k >= x.j(), "moment_times_id: k < j");
    ZModPr ex(x.p(), x.r(), 0);
    auto out = SymTensor<ZModPr>::zero(k, ex);
    for (const auto& [v, s] : x.terms())
        out = out + SymTensor<ZModPr>::power(k - x.j(), ex.make(v[0]), ex.make(v[1])) * s;
    return out;
}

void GroupBiTensorElem::add_term(Key vw, const BiSymTensor<ZModPr>& m) {
    RANKIN_CHECK(m.degree1() == j_ && m.degree2() == j_ && m.twist() == -j_,
                 "GroupBiTensorElem: shape mismatch");
    auto it = t_.find(vw);
    if (it == t_.end()) {
        if (!m.is_zero()) t_.emplace(vw, m);
        return;
    }
    it->second = it->second + m;
    if (it->second.is_zero()) t_.erase(it);
}

GroupBiTensorElem GroupBiTensorElem::operator+(const GroupBiTensorElem& o) const {
    RANKIN_CHECK(p_ == o.p_ && r_ == o.r_ && j_ == o.j_, "GroupBiTensorElem: mixed shape");
    GroupBiTensorElem g = *this;
    for (const auto& [vw, m] : o.t_) g.add_term(vw, m);
    return g;
}

GroupBiTensorElem GroupBiTensorElem::scale(const ZModPr& s) const {
    GroupBiTensorElem g(p_, r_, j_);
    for (const auto& [vw, m] : t_) g.add_term(vw, m.scale(s));
    return g;
}

GroupBiTensorElem iwasawa_cg(const GroupRingElem& g, long j) {
    RANKIN_CHECK(j >= 0, "iwasawa_cg: negative twist degree");
    ZModPr ex(g.p(), g.r(), 0);
    auto cup = clebsch_gordan_cup(j, ex);
    GroupBiTensorElem out(g.p(), g.r(), j);
    for (const auto& [v, c] : g.terms()) out.add_term({v[0], v[1], v[0], v[1]}, cup.scale(c));
    return out;
}

BiSymTensor<ZModPr> moment_pair(const GroupBiTensorElem& x, long k, long kp) {
    long j = x.j();
    RANKIN_CHECK(k >= j && kp >= j, "moment_pair: weights below twist degree");
    ZModPr ex(x.p(), x.r(), 0);
    auto out = BiSymTensor<ZModPr>::zero(k, kp, -j, ex);
    for (const auto& [vw, m] : x.terms()) {
        auto a = SymTensor<ZModPr>::power(k - j, ex.make(vw[0]), ex.make(vw[1]));
        auto b = SymTensor<ZModPr>::power(kp - j, ex.make(vw[2]), ex.make(vw[3]));
        out = out + BiSymTensor<ZModPr>::outer(a, b, 0) * m;
    }
    return out;
}

}  // namespace rankin
