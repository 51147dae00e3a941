#pragma once

#include <optional>

#include "aszl/characters.hpp"

namespace aszl {

// L-function with exact cyclotomic coefficients, constant term 1.
struct LPoly {
    enum class Side { Curve, Character };
    Side side = Side::Curve;
    std::vector<CyclotomicInt> coeff;  // coeff[0] = 1
    const FieldDescriptor* field = nullptr;
    // Character side: the (1 - delta u) factor carrying the trivial zero of
    // an even character (delta is the degree twist, 1 in the plain case).
    // Absent when the L-function has no trivial factor.
    std::optional<CyclotomicInt> trivial_factor;

    int degree() const { return static_cast<int>(coeff.size()) - 1; }
    bool operator==(const LPoly& o) const { return coeff == o.coeff; }
    // coefficientwise substitution u -> s*u (s a root of unity)
    LPoly rescaled(const CyclotomicInt& s) const;
    // exact division by (1 - delta u); throws unless it divides exactly
    LPoly strip_trivial_factor() const;
};

// S_r(f) = sum over alpha in F_{q^r} (and infinity when f is finite there)
// of psi(tr_{q^r/p} f(alpha))
CyclotomicInt char_power_sum(const RationalFunction& f, const AdditiveCharacter& psi, int r);

// curve-side L-function of y^p - y = f, the psi-isotypic factor, recovered
// exactly from S_1..S_delta by the exp/Newton recurrence over Q(zeta_p).
// delta = 2*genus/(p-1) is fixed by the family (see family_delta).
LPoly l_function_as(const RationalFunction& f, const AdditiveCharacter& psi, int delta);
LPoly l_function_as(const RationalFunction& f, const AdditiveCharacter& psi);  // infers delta

// character-side L(u, chi) = sum over monic F of chi(F) u^deg F, exact, by
// full enumeration up to degree deg Q - 1; requires chi non-trivial
LPoly l_function_of_char(const DirichletChar& chi);

// delta(f): psi(tr(f(infinity))) when deg h = deg g, else 1
CyclotomicInt delta_factor(const RationalFunction& f, const AdditiveCharacter& psi);

// constant-shift twist identity L(u, f+b, psi) = L(psi(tr b) u, f, psi), exact
bool twist_check(const RationalFunction& f, const FieldElement& b, const AdditiveCharacter& psi);

}  // namespace aszl
