#pragma once

#include "aszl/lfunction.hpp"

namespace aszl {

// The three Artin-Schreier families and their subfamilies. Members are held
// as rational functions; polynomial-family members have denominator 1.
struct FamilyDescriptor {
    enum class Kind {
        OrdinaryFull,      // AS_d^ord over all valid denominators g
        OrdinaryFixedG,    // AS_{d,g}^ord
        OrdinaryHg,        // H_g = {h/g : deg h < deg g}, deg g = d
        OrdinaryHgTwistA,  // H_g^a = {f + ax : f in H_g}
        PolynomialAS0,     // AS_d^0
        PolynomialFd,      // F_d = {f in AS_d^0 : f(0) = 0}
        OddPolynomial,     // AS_d^{0,odd}
    };

    Kind kind;
    const FieldDescriptor* field = nullptr;
    int d = 0;
    Poly g;          // ordinary kinds
    FieldElement a;  // twist parameter for OrdinaryHgTwistA

    static FamilyDescriptor polynomial_fd(const FieldDescriptor* f, int d);
    static FamilyDescriptor polynomial_as0(const FieldDescriptor* f, int d);
    static FamilyDescriptor odd_polynomial(const FieldDescriptor* f, int d);
    static FamilyDescriptor ordinary_hg(const Poly& g);
    static FamilyDescriptor ordinary_hg_twist(const Poly& g, const FieldElement& a);
    static FamilyDescriptor ordinary_fixed_g(int d, const Poly& g);
    static FamilyDescriptor ordinary_full(const FieldDescriptor* f, int d);

    void validate() const;  // throws std::invalid_argument naming the violated constraint
    std::string name() const;
};

// deterministic enumeration of the family members
std::vector<RationalFunction> enumerate(const FamilyDescriptor& desc);

// closed-form member count (for OrdinaryFull: the sum of per-g closed forms)
BigInt family_size_closed_form(const FamilyDescriptor& desc);

// number of zeros of L(u,f,psi) for members of this family: 2*genus/(p-1)
int family_delta(const FamilyDescriptor& desc);
// per-member variant: deg h - 1 for polynomials, 2*(max(deg h, deg g) - 1) otherwise
int member_delta(const RationalFunction& f);

// The Dirichlet character chi_f attached to a family member. Constant parts
// of an ordinary member with deg h = deg g move into a degree twist. Members
// with deg h > deg g have no Dirichlet-character model here and throw.
DirichletChar chi_for_member(const RationalFunction& f, const AdditiveCharacter& psi);

// the trivial factor (1 - delta u) expected to relate curve and character
// side; nullopt when the character-side L has no trivial zero
std::optional<CyclotomicInt> expected_trivial_factor(const RationalFunction& f,
                                                     const AdditiveCharacter& psi);

}  // namespace aszl
