#pragma once

#include <functional>
#include <vector>

#include "aszl/cyclotomic.hpp"
#include "aszl/poly.hpp"

namespace aszl {

// Non-trivial additive character psi_m of F_p: psi_m(a) = zeta_p^(m*a).
class AdditiveCharacter {
   public:
    AdditiveCharacter() = default;
    AdditiveCharacter(uint32_t p, uint32_t m);
    uint32_t p() const { return p_; }
    uint32_t m() const { return m_; }
    // a must live in the prime field F_p
    CyclotomicInt operator()(const FieldElement& a) const;
    CyclotomicInt at_int(int64_t a) const;
    // psi(tr_{q/p}(a)) for a in any F_{p^k}
    CyclotomicInt tr(const FieldElement& a) const;

   private:
    uint32_t p_ = 0, m_ = 0;
};

// von Mangoldt: deg P if c = P^k for a prime P, else 0. c must be monic.
int von_mangoldt(const Poly& c);

struct PolyFactor {
    Poly prime;
    int exponent;
};

// factorization of a monic nonzero polynomial by trial division over the
// cached irreducible tables (desk scale)
std::vector<PolyFactor> factorize(const Poly& g);

int mobius(const Poly& g);
BigInt euler_phi(const Poly& g);
BigInt divisor_count(const Poly& g);
std::vector<Poly> monic_divisors(const Poly& g);

// sum of u(alpha) over the roots alpha of c (with multiplicity), computed as
// the trace of multiplication by u mod c on F_q[x]/(c); requires
// gcd(denominator(u), c) = 1
FieldElement sum_over_roots(const RationalFunction& u, const Poly& c);

// power sums p_j of the inverse roots of c (c = c(0) * prod(1 - alpha_i x)),
// j = 1..j_max, via Newton's identities; requires c(0) != 0
std::vector<FieldElement> inverse_root_power_sums(const Poly& c, int j_max);

// cached per (field, degree)
const std::vector<Poly>& monic_irreducibles(const FieldDescriptor* f, int deg);

struct PrimePower {
    Poly value;
    int lambda;  // von Mangoldt value = degree of the base prime
};
const std::vector<PrimePower>& prime_powers_of_degree(const FieldDescriptor* f, int deg);

// visit all monic polynomials of the given degree in odometer order
void for_each_monic(const FieldDescriptor* f, int deg, const std::function<void(const Poly&)>& fn);

uint64_t pow_u64(uint64_t base, uint32_t e);

}  // namespace aszl
