#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

namespace aszl {

class FieldDescriptor;

// Element of F_{p^k}: coefficient vector of length k over F_p in the
// power basis of F_p[x]/(modulus). Immutable value type.
struct FieldElement {
    const FieldDescriptor* field = nullptr;
    std::vector<uint32_t> c;

    bool is_zero() const;
    bool operator==(const FieldElement& o) const { return field == o.field && c == o.c; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
};

// Explicit description of F_q, q = p^k, as F_p[x]/(modulus). Descriptors are
// interned and live for the whole process; share them by pointer.
class FieldDescriptor {
   public:
    uint32_t p() const { return p_; }
    uint32_t k() const { return k_; }
    uint64_t q() const { return q_; }
    const std::vector<uint32_t>& modulus_poly() const { return modulus_; }

    FieldElement zero() const;
    FieldElement one() const;
    // canonical image of the integer n (n mod p, embedded as a constant)
    FieldElement from_int(int64_t n) const;
    // deterministic enumeration: index 0..q-1, base-p digits, c[0] least significant
    FieldElement element_at(uint64_t index) const;
    uint64_t index_of(const FieldElement& a) const;
    // the class of x (generator of the power basis)
    FieldElement gen() const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement pow(const FieldElement& a, uint64_t e) const;
    FieldElement frobenius(const FieldElement& a) const;  // a^p

    // multiplicative generator of F_q^x (smallest by element index)
    FieldElement unit_group_generator() const;

    std::string to_string(const FieldElement& a) const;

   private:
    friend const FieldDescriptor* make_field(uint32_t, uint32_t);
    friend const FieldDescriptor* make_field_with_modulus(uint32_t, const std::vector<uint32_t>&);
    FieldDescriptor(uint32_t p, uint32_t k, std::vector<uint32_t> modulus);

    uint32_t p_, k_;
    uint64_t q_;
    std::vector<uint32_t> modulus_;  // length k+1, monic
    mutable std::atomic<uint64_t> unit_gen_index_{0};  // cached, 0 = not yet computed
};

// F_q with the lexicographically least monic irreducible modulus of degree k
// (coefficients compared a_0 first). Throws std::invalid_argument for
// non-prime p or k < 1.
const FieldDescriptor* make_field(uint32_t p, uint32_t k);

// user-supplied modulus override (must be monic irreducible over F_p)
const FieldDescriptor* make_field_with_modulus(uint32_t p, const std::vector<uint32_t>& modulus);

// F_{q^r} realized as a degree k*r extension of F_p, plus the image of the
// generator of F_q under a fixed embedding (found by root search, cached).
struct ExtensionHandle {
    const FieldDescriptor* big;
    FieldElement q_gen_image;  // image in `big` of F_q's power-basis generator
};
const ExtensionHandle& extension_field(const FieldDescriptor* fq, uint32_t r);

// embed a in F_q into F_{q^r} through the handle
FieldElement embed(const FieldElement& a, const ExtensionHandle& ext);

// tr_{q/p}: a + a^p + ... + a^{p^(k-1)}, returned as an element of F_p
FieldElement trace_to_prime(const FieldElement& a);

// convenience: trace value as an integer in [0, p)
uint32_t trace_to_prime_int(const FieldElement& a);

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a);

}  // namespace aszl
