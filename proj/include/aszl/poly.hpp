#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aszl/field.hpp"

namespace aszl {

// Degree of a polynomial: a nonnegative integer, or a distinct minus-infinity
// marker for the zero polynomial (deliberately not -1).
class Degree {
   public:
    static Degree neg_inf() { return Degree(); }
    static Degree of(int v) {
        Degree d;
        d.v_ = v;
        return d;
    }
    bool is_neg_inf() const { return !v_.has_value(); }
    int value() const;  // throws on the minus-infinity marker

    bool operator==(const Degree& o) const { return v_ == o.v_; }
    bool operator!=(const Degree& o) const { return v_ != o.v_; }
    bool operator<(const Degree& o) const;
    bool operator<=(const Degree& o) const { return *this < o || *this == o; }
    bool operator>(const Degree& o) const { return o < *this; }
    bool operator>=(const Degree& o) const { return o <= *this; }
    // comparisons against plain ints treat the marker as smaller than everything
    bool operator<(int b) const { return is_neg_inf() || *v_ < b; }
    bool operator<=(int b) const { return is_neg_inf() || *v_ <= b; }
    bool operator>(int b) const { return !is_neg_inf() && *v_ > b; }
    bool operator>=(int b) const { return !is_neg_inf() && *v_ >= b; }
    bool operator==(int b) const { return !is_neg_inf() && *v_ == b; }

   private:
    std::optional<int> v_;
};

// Dense polynomial over F_q, most-significant coefficient trimmed.
class Poly {
   public:
    Poly() = default;
    explicit Poly(const FieldDescriptor* f) : f_(f) {}

    static Poly zero(const FieldDescriptor* f) { return Poly(f); }
    static Poly one(const FieldDescriptor* f);
    static Poly x(const FieldDescriptor* f);
    static Poly constant(const FieldElement& a);
    static Poly from_coeffs(const FieldDescriptor* f, std::vector<FieldElement> cs);
    static Poly from_int_coeffs(const FieldDescriptor* f, const std::vector<int64_t>& cs);
    // index'th monic polynomial of degree d in the coefficient odometer order
    static Poly monic_at(const FieldDescriptor* f, int d, uint64_t index);

    const FieldDescriptor* field() const { return f_; }
    Degree degree() const;
    int deg_or(int if_zero) const { return is_zero() ? if_zero : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    bool is_monic() const;
    bool is_constant() const { return c_.size() <= 1; }
    FieldElement coeff(size_t i) const;
    FieldElement lead() const;
    FieldElement constant_term() const { return coeff(0); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scale(const FieldElement& s) const;
    Poly shift(int n) const;  // multiply by x^n
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }
    bool operator==(const Poly& o) const { return f_ == o.f_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    bool operator<(const Poly& o) const;  // deterministic ordering for containers

    Poly monic() const;  // scaled by the inverse of the leading coefficient
    Poly derivative() const;
    FieldElement eval(const FieldElement& a) const;
    // evaluate in an extension field, embedding the coefficients
    FieldElement eval_embedded(const FieldElement& a, const ExtensionHandle& ext) const;
    Poly pow(uint64_t e) const;
    Poly pow_mod(uint64_t e, const Poly& m) const;
    Poly mod_inverse(const Poly& m) const;  // inverse modulo m, requires gcd == 1
    // exact p-th root of a polynomial lying in F_q[x^p]; throws otherwise
    Poly pth_root() const;

    std::string to_string() const;           // human form, e.g. "x^3+2x+1"
    std::string coeff_string() const;        // ascending CSV of coefficient indices

   private:
    const FieldDescriptor* f_ = nullptr;
    std::vector<FieldElement> c_;
    void trim();
};

Poly poly_gcd(const Poly& a, const Poly& b);  // monic; throws if both zero
bool is_squarefree(const Poly& g);
bool is_irreducible(const Poly& c);

// h/g with gcd(h,g)=1 after construction-time reduction; g monic.
class RationalFunction {
   public:
    RationalFunction() = default;
    RationalFunction(Poly h, Poly g);
    const Poly& numerator() const { return h_; }
    const Poly& denominator() const { return g_; }
    const FieldDescriptor* field() const { return h_.field(); }
    bool is_polynomial() const { return g_.is_one(); }
    RationalFunction operator+(const RationalFunction& o) const;
    bool operator==(const RationalFunction& o) const { return h_ == o.h_ && g_ == o.g_; }
    std::string to_string() const;

   private:
    Poly h_, g_;
};

}  // namespace aszl
