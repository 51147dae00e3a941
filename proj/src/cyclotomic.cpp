#include "aszl/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aszl {

CyclotomicInt CyclotomicInt::from_int(uint32_t p, BigInt n) {
    CyclotomicInt r(p);
    r.a_[0] = std::move(n);
    return r;
}

CyclotomicInt CyclotomicInt::from_coords(uint32_t p, std::vector<BigInt> coords) {
    if (coords.size() != p - 1) throw std::invalid_argument("from_coords: wrong length");
    CyclotomicInt r(p);
    r.a_ = std::move(coords);
    return r;
}

void CyclotomicInt::add_zeta_multiple(int64_t e, const BigInt& amount) {
    if (amount == 0) return;
    int64_t m = e % static_cast<int64_t>(p_);
    if (m < 0) m += p_;
    if (m <= static_cast<int64_t>(p_) - 2) {
        a_[static_cast<size_t>(m)] += amount;
    } else {
        // zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
        for (auto& x : a_) x -= amount;
    }
}

CyclotomicInt CyclotomicInt::zeta_pow(uint32_t p, int64_t m) {
    CyclotomicInt r(p);
    r.add_zeta_multiple(m, 1);
    return r;
}

bool CyclotomicInt::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

CyclotomicInt CyclotomicInt::operator+(const CyclotomicInt& o) const {
    if (p_ != o.p_) throw std::invalid_argument("cyclotomic order mismatch");
    CyclotomicInt r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

CyclotomicInt CyclotomicInt::operator-(const CyclotomicInt& o) const {
    if (p_ != o.p_) throw std::invalid_argument("cyclotomic order mismatch");
    CyclotomicInt r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

CyclotomicInt CyclotomicInt::operator-() const {
    CyclotomicInt r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
}

CyclotomicInt CyclotomicInt::operator*(const CyclotomicInt& o) const {
    if (p_ != o.p_) throw std::invalid_argument("cyclotomic order mismatch");
    CyclotomicInt r(p_);
    for (size_t i = 0; i < a_.size(); ++i) {
        if (a_[i] == 0) continue;
        for (size_t j = 0; j < o.a_.size(); ++j) {
            if (o.a_[j] == 0) continue;
            r.add_zeta_multiple(static_cast<int64_t>(i + j), a_[i] * o.a_[j]);
        }
    }
    return r;
}

CyclotomicInt CyclotomicInt::scaled(const BigInt& s) const {
    CyclotomicInt r = *this;
    for (auto& x : r.a_) x *= s;
    return r;
}

CyclotomicInt CyclotomicInt::conj_inv() const {
    CyclotomicInt r(p_);
    for (size_t i = 0; i < a_.size(); ++i)
        r.add_zeta_multiple(-static_cast<int64_t>(i), a_[i]);
    return r;
}

std::complex<double> CyclotomicInt::embed() const {
    std::complex<double> z(0.0, 0.0);
    for (size_t i = 0; i < a_.size(); ++i) {
        if (a_[i] == 0) continue;
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(i) / p_;
        z += static_cast<double>(a_[i]) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return z;
}

std::string CyclotomicInt::to_string() const {
    std::string s;
    for (size_t i = 0; i < a_.size(); ++i) {
        if (a_[i] == 0) continue;
        if (!s.empty() && a_[i] > 0) s += "+";
        s += a_[i].str();
        if (i == 1) s += "*z";
        if (i > 1) s += "*z^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

CycRational::CycRational(CyclotomicInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw std::invalid_argument("zero denominator");
    if (den_ < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    normalize();
}

void CycRational::normalize() {
    if (num_.is_zero()) {
        den_ = 1;
        return;
    }
    BigInt g = den_;
    for (size_t i = 0; i + 1 < num_.p(); ++i) g = boost::multiprecision::gcd(g, num_.coeff(i));
    if (g > 1) {
        std::vector<BigInt> coords(num_.p() - 1);
        for (size_t i = 0; i + 1 < num_.p(); ++i) coords[i] = num_.coeff(i) / g;
        num_ = CyclotomicInt::from_coords(num_.p(), std::move(coords));
        den_ /= g;
    }
}

CycRational CycRational::operator+(const CycRational& o) const {
    return CycRational(num_.scaled(o.den_) + o.num_.scaled(den_), den_ * o.den_);
}

CycRational CycRational::operator*(const CycRational& o) const {
    return CycRational(num_ * o.num_, den_ * o.den_);
}

CycRational CycRational::operator*(const CyclotomicInt& o) const {
    return CycRational(num_ * o, den_);
}

CycRational CycRational::div_int(const BigInt& k) const {
    if (k == 0) throw std::invalid_argument("division by zero");
    return CycRational(num_, den_ * k);
}

const CyclotomicInt& CycRational::as_integral() const {
    if (den_ != 1) throw std::logic_error("cyclotomic fraction is not integral: denominator " + den_.str());
    return num_;
}

}  // namespace aszl
