#include "aszl/poly.hpp"

#include <stdexcept>

namespace aszl {

int Degree::value() const {
    if (!v_.has_value()) throw std::domain_error("degree of the zero polynomial has no integer value");
    return *v_;
}

bool Degree::operator<(const Degree& o) const {
    if (is_neg_inf()) return !o.is_neg_inf();
    if (o.is_neg_inf()) return false;
    return *v_ < *o.v_;
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::one(const FieldDescriptor* f) {
    Poly r(f);
    r.c_ = {f->one()};
    return r;
}

Poly Poly::x(const FieldDescriptor* f) {
    Poly r(f);
    r.c_ = {f->zero(), f->one()};
    return r;
}

Poly Poly::constant(const FieldElement& a) {
    Poly r(a.field);
    r.c_ = {a};
    r.trim();
    return r;
}

Poly Poly::from_coeffs(const FieldDescriptor* f, std::vector<FieldElement> cs) {
    Poly r(f);
    r.c_ = std::move(cs);
    r.trim();
    return r;
}

Poly Poly::from_int_coeffs(const FieldDescriptor* f, const std::vector<int64_t>& cs) {
    Poly r(f);
    r.c_.reserve(cs.size());
    for (int64_t v : cs) r.c_.push_back(f->from_int(v));
    r.trim();
    return r;
}

Poly Poly::monic_at(const FieldDescriptor* f, int d, uint64_t index) {
    Poly r(f);
    r.c_.assign(d + 1, f->zero());
    r.c_[d] = f->one();
    for (int j = 0; j < d && index > 0; ++j) {
        r.c_[j] = f->element_at(index % f->q());
        index /= f->q();
    }
    return r;
}

Degree Poly::degree() const {
    if (c_.empty()) return Degree::neg_inf();
    return Degree::of(static_cast<int>(c_.size()) - 1);
}

bool Poly::is_one() const { return c_.size() == 1 && c_[0] == f_->one(); }

bool Poly::is_monic() const { return !c_.empty() && c_.back() == f_->one(); }

FieldElement Poly::coeff(size_t i) const { return i < c_.size() ? c_[i] : f_->zero(); }

FieldElement Poly::lead() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
    Poly r(f_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), f_->zero());
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) + o.coeff(i);
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r(f_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), f_->zero());
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) - o.coeff(i);
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(f_);
    Poly r(f_);
    r.c_.assign(c_.size() + o.c_.size() - 1, f_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

Poly Poly::scale(const FieldElement& s) const {
    Poly r = *this;
    for (auto& a : r.c_) a = a * s;
    r.trim();
    return r;
}

Poly Poly::shift(int n) const {
    if (is_zero()) return *this;
    Poly r(f_);
    r.c_.assign(c_.size() + n, f_->zero());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i + n] = c_[i];
    return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly q(f_), r = *this;
    const int dd = static_cast<int>(d.c_.size()) - 1;
    const FieldElement lcinv = f_->inv(d.lead());
    if (static_cast<int>(r.c_.size()) - 1 >= dd) q.c_.assign(r.c_.size() - dd, f_->zero());
    while (!r.is_zero() && static_cast<int>(r.c_.size()) - 1 >= dd) {
        const int shift = static_cast<int>(r.c_.size()) - 1 - dd;
        const FieldElement fac = r.lead() * lcinv;
        q.c_[shift] = q.c_[shift] + fac;
        for (int j = 0; j <= dd; ++j) r.c_[shift + j] = r.c_[shift + j] - fac * d.c_[j];
        r.trim();
    }
    q.trim();
    return {q, r};
}

bool Poly::operator<(const Poly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (size_t i = c_.size(); i-- > 0;) {
        const uint64_t a = f_->index_of(c_[i]), b = o.f_->index_of(o.c_[i]);
        if (a != b) return a < b;
    }
    return false;
}

Poly Poly::monic() const {
    if (is_zero()) throw std::domain_error("monic scaling of zero polynomial");
    return scale(f_->inv(lead()));
}

Poly Poly::derivative() const {
    Poly r(f_);
    if (c_.size() <= 1) return r;
    r.c_.assign(c_.size() - 1, f_->zero());
    for (size_t i = 1; i < c_.size(); ++i) {
        FieldElement m = f_->from_int(static_cast<int64_t>(i % f_->p()));
        r.c_[i - 1] = c_[i] * m;
    }
    r.trim();
    return r;
}

FieldElement Poly::eval(const FieldElement& a) const {
    FieldElement acc = f_->zero();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * a + c_[i];
    return acc;
}

FieldElement Poly::eval_embedded(const FieldElement& a, const ExtensionHandle& ext) const {
    const FieldDescriptor* big = ext.big;
    FieldElement acc = big->zero();
    for (size_t i = c_.size(); i-- > 0;) {
        acc = big->mul(acc, a);
        acc = big->add(acc, embed(c_[i], ext));
    }
    return acc;
}

Poly Poly::pow(uint64_t e) const {
    Poly acc = Poly::one(f_), base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Poly Poly::pow_mod(uint64_t e, const Poly& m) const {
    Poly acc = Poly::one(f_), base = *this % m;
    while (e > 0) {
        if (e & 1) acc = (acc * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return acc;
}

Poly Poly::mod_inverse(const Poly& m) const {
    // extended Euclid
    Poly r0 = m, r1 = *this % m;
    Poly s0 = Poly::zero(f_), s1 = Poly::one(f_);
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        Poly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (!r0.is_constant() || r0.is_zero())
        throw std::domain_error("mod_inverse: element not invertible modulo m");
    return (s0 % m).scale(f_->inv(r0.coeff(0)));
}

Poly Poly::pth_root() const {
    // Frobenius is bijective on F_q, so c(x) = h(x)^p iff c in F_q[x^p] with
    // h's coefficients the p^(k-1)-th powers of c's.
    const uint32_t p = f_->p();
    if (is_zero()) return *this;
    Poly r(f_);
    r.c_.assign((c_.size() - 1) / p + 1, f_->zero());
    uint64_t root_exp = 1;
    for (uint32_t i = 1; i < f_->k(); ++i) root_exp *= p;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i % p != 0) {
            if (!c_[i].is_zero()) throw std::domain_error("pth_root: polynomial not in F_q[x^p]");
            continue;
        }
        r.c_[i / p] = f_->pow(c_[i], root_exp);
    }
    r.trim();
    return r;
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!s.empty()) s += "+";
        const std::string cs = f_->to_string(c_[i]);
        if (i == 0) {
            s += cs;
        } else {
            if (!(f_->k() == 1 && c_[i].c[0] == 1)) s += cs;
            s += (i == 1) ? "x" : "x^" + std::to_string(i);
        }
    }
    return s;
}

std::string Poly::coeff_string() const {
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(f_->index_of(c_[i]));
    }
    return s.empty() ? "0" : s;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0,0) undefined");
    Poly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        Poly r2 = r0 % r1;
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return r0.monic();
}

bool is_squarefree(const Poly& g) {
    if (g.is_zero()) throw std::domain_error("is_squarefree: zero polynomial");
    if (g.is_constant()) return true;
    Poly d = g.derivative();
    if (d.is_zero()) return false;  // g in F_q[x^p] is a p-th power
    return poly_gcd(g, d).is_one();
}

bool is_irreducible(const Poly& c) {
    const int n = c.deg_or(-1);
    if (n < 1) return false;
    const FieldDescriptor* f = c.field();
    const uint64_t q = f->q();
    // x^(q^n) == x mod c, via n successive q-th powers (avoids q^n overflow)
    const Poly x = Poly::x(f);
    Poly t = x % c;
    std::vector<Poly> qpowers;  // x^(q^i) mod c for i = 1..n
    for (int i = 0; i < n; ++i) {
        t = t.pow_mod(q, c);
        qpowers.push_back(t);
    }
    if (!(qpowers.back() == x % c)) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool lprime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) lprime = false;
        if (!lprime) continue;
        Poly diff = qpowers[n / l - 1] - x;
        if (diff.is_zero()) return false;
        if (!poly_gcd(diff, c).is_one()) return false;
    }
    return true;
}

RationalFunction::RationalFunction(Poly h, Poly g) : h_(std::move(h)), g_(std::move(g)) {
    if (g_.is_zero()) throw std::invalid_argument("rational function with zero denominator");
    if (!h_.is_zero()) {
        Poly d = poly_gcd(h_, g_);
        if (!d.is_one()) {
            h_ = h_ / d;
            g_ = g_ / d;
        }
    }
    // keep the denominator monic
    const FieldElement lc = g_.lead();
    if (!(lc == g_.field()->one())) {
        const FieldElement inv = g_.field()->inv(lc);
        g_ = g_.scale(inv);
        h_ = h_.scale(inv);
    }
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    return RationalFunction(h_ * o.g_ + o.h_ * g_, g_ * o.g_);
}

std::string RationalFunction::to_string() const {
    if (g_.is_one()) return h_.to_string();
    return "(" + h_.to_string() + ")/(" + g_.to_string() + ")";
}

}  // namespace aszl
