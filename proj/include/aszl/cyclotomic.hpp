#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace aszl {

using BigInt = boost::multiprecision::cpp_int;

// Exact element of Z[zeta_p] in the basis {1, zeta, ..., zeta^(p-2)} with the
// relation 1 + zeta + ... + zeta^(p-1) = 0 eliminating zeta^(p-1).
class CyclotomicInt {
   public:
    CyclotomicInt() = default;
    explicit CyclotomicInt(uint32_t p) : p_(p), a_(p - 1) {}

    static CyclotomicInt zero(uint32_t p) { return CyclotomicInt(p); }
    static CyclotomicInt from_int(uint32_t p, BigInt n);
    // coordinates in the canonical basis (length p-1)
    static CyclotomicInt from_coords(uint32_t p, std::vector<BigInt> coords);
    static CyclotomicInt one(uint32_t p) { return from_int(p, 1); }
    // zeta_p^m for any integer m (reduced mod p)
    static CyclotomicInt zeta_pow(uint32_t p, int64_t m);

    uint32_t p() const { return p_; }
    const BigInt& coeff(size_t i) const { return a_[i]; }
    bool is_zero() const;
    bool is_one() const { return *this == one(p_); }

    CyclotomicInt operator+(const CyclotomicInt& o) const;
    CyclotomicInt operator-(const CyclotomicInt& o) const;
    CyclotomicInt operator-() const;
    CyclotomicInt operator*(const CyclotomicInt& o) const;
    CyclotomicInt scaled(const BigInt& s) const;
    bool operator==(const CyclotomicInt& o) const { return p_ == o.p_ && a_ == o.a_; }
    bool operator!=(const CyclotomicInt& o) const { return !(*this == o); }

    CyclotomicInt conj_inv() const;  // the ring automorphism zeta -> zeta^(-1)
    bool is_conjugation_fixed() const { return *this == conj_inv(); }

    std::complex<double> embed() const;  // zeta -> exp(2*pi*i/p)

    std::string to_string() const;

   private:
    uint32_t p_ = 0;
    std::vector<BigInt> a_;
    void add_zeta_multiple(int64_t exponent, const BigInt& amount);
};

// Exact fraction over Z[zeta_p]: numerator in Z[zeta_p], positive integer
// denominator, reduced by the integer content.
class CycRational {
   public:
    CycRational() = default;
    explicit CycRational(CyclotomicInt n) : num_(std::move(n)), den_(1) {}
    CycRational(CyclotomicInt n, BigInt d);

    static CycRational zero(uint32_t p) { return CycRational(CyclotomicInt::zero(p)); }
    static CycRational one(uint32_t p) { return CycRational(CyclotomicInt::one(p)); }

    const CyclotomicInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    CycRational operator+(const CycRational& o) const;
    CycRational operator*(const CycRational& o) const;
    CycRational operator*(const CyclotomicInt& o) const;
    CycRational div_int(const BigInt& k) const;
    bool operator==(const CycRational& o) const { return num_ == o.num_ && den_ == o.den_; }

    bool is_integral() const { return den_ == 1; }
    const CyclotomicInt& as_integral() const;  // throws unless den == 1

   private:
    CyclotomicInt num_;
    BigInt den_ = 1;
    void normalize();
};

}  // namespace aszl
