#include "aszl/lfunction.hpp"

#include <stdexcept>

namespace aszl {

LPoly LPoly::rescaled(const CyclotomicInt& s) const {
    LPoly r = *this;
    CyclotomicInt sk = CyclotomicInt::one(s.p());
    for (size_t k = 1; k < r.coeff.size(); ++k) {
        sk = sk * s;
        r.coeff[k] = r.coeff[k] * sk;
    }
    return r;
}

LPoly LPoly::strip_trivial_factor() const {
    if (!trivial_factor) throw std::logic_error("strip_trivial_factor: no trivial factor recorded");
    const CyclotomicInt& delta = *trivial_factor;
    if (degree() < 1) throw std::logic_error("strip_trivial_factor: degree too small");
    // L = (1 - delta u) * R  =>  R_k = L_k + delta R_{k-1}
    LPoly r;
    r.side = side;
    r.field = field;
    r.coeff.resize(coeff.size() - 1, CyclotomicInt::zero(delta.p()));
    CyclotomicInt prev = CyclotomicInt::zero(delta.p());
    for (size_t k = 0; k + 1 < coeff.size(); ++k) {
        r.coeff[k] = coeff[k] + delta * prev;
        prev = r.coeff[k];
    }
    if (!(coeff.back() == -(delta * prev)))
        throw std::logic_error("strip_trivial_factor: (1 - delta u) does not divide L exactly");
    while (!r.coeff.empty() && r.coeff.back().is_zero() && r.coeff.size() > 1) r.coeff.pop_back();
    return r;
}

CyclotomicInt char_power_sum(const RationalFunction& f, const AdditiveCharacter& psi, int r) {
    const FieldDescriptor* fq = f.field();
    const uint32_t p = fq->p();
    if (r < 1) throw std::invalid_argument("char_power_sum: r must be >= 1");
    const Poly& h = f.numerator();
    const Poly& g = f.denominator();
    CyclotomicInt s = CyclotomicInt::zero(p);
    // contribution of the point at infinity
    const int dh = h.deg_or(-1), dg = g.deg_or(0);
    const auto& ext = extension_field(fq, static_cast<uint32_t>(r));
    const FieldDescriptor* big = ext.big;
    if (dh < dg) {
        s = s + CyclotomicInt::one(p);  // f(infinity) = 0
    } else if (dh == dg) {
        FieldElement val = h.lead() * fq->inv(g.lead());
        s = s + psi.tr(embed(val, ext));
    }  // dh > dg: pole at infinity, no term
    // embed the coefficients once
    std::vector<FieldElement> hc, gc;
    for (int i = 0; i <= std::max(dh, 0); ++i) hc.push_back(embed(h.coeff(static_cast<size_t>(i)), ext));
    for (int i = 0; i <= dg; ++i) gc.push_back(embed(g.coeff(static_cast<size_t>(i)), ext));
    const bool poly_case = g.is_one();
    for (uint64_t idx = 0; idx < big->q(); ++idx) {
        const FieldElement alpha = big->element_at(idx);
        FieldElement hv = big->zero();
        for (size_t i = hc.size(); i-- > 0;) hv = big->add(big->mul(hv, alpha), hc[i]);
        if (h.is_zero()) hv = big->zero();
        FieldElement val = hv;
        if (!poly_case) {
            FieldElement gv = big->zero();
            for (size_t i = gc.size(); i-- > 0;) gv = big->add(big->mul(gv, alpha), gc[i]);
            if (gv.is_zero()) continue;  // pole
            val = big->mul(hv, big->inv(gv));
        }
        s = s + psi.tr(val);
    }
    return s;
}

LPoly l_function_as(const RationalFunction& f, const AdditiveCharacter& psi, int delta) {
    const uint32_t p = psi.p();
    if (delta < 0) throw std::invalid_argument("l_function_as: negative degree");
    // one term past delta: the exp series of a genuine member truncates
    // there, which is what catches f = h^p - h and misclassified members
    std::vector<CyclotomicInt> s(static_cast<size_t>(delta) + 2, CyclotomicInt::zero(p));
    for (int r = 1; r <= delta + 1; ++r) s[static_cast<size_t>(r)] = char_power_sum(f, psi, r);
    // exp recurrence c_k = (1/k) sum_{j=1..k} S_j c_{k-j}, exact over Q(zeta_p);
    // any non-integrality at the end indicates a math bug and aborts loudly
    std::vector<CycRational> c(static_cast<size_t>(delta) + 2, CycRational::zero(p));
    c[0] = CycRational::one(p);
    for (int k = 1; k <= delta + 1; ++k) {
        CycRational acc = CycRational::zero(p);
        for (int j = 1; j <= k; ++j) acc = acc + c[static_cast<size_t>(k - j)] * s[static_cast<size_t>(j)];
        c[static_cast<size_t>(k)] = acc.div_int(k);
    }
    if (!c.back().is_zero() || (delta > 0 && c[static_cast<size_t>(delta)].is_zero()))
        throw std::domain_error(
            "l_function_as: computed L does not have the degree the family predicts "
            "(f of the form h^p - h, or family misclassification)");
    c.pop_back();
    LPoly out;
    out.side = LPoly::Side::Curve;
    out.field = f.field();
    out.coeff.reserve(c.size());
    for (const auto& ck : c) out.coeff.push_back(ck.as_integral());
    return out;
}

LPoly l_function_as(const RationalFunction& f, const AdditiveCharacter& psi) {
    const int dh = f.numerator().deg_or(0);
    const int delta = f.is_polynomial() ? dh - 1
                                        : 2 * (std::max(dh, f.denominator().deg_or(0)) - 1);
    return l_function_as(f, psi, delta);
}

LPoly l_function_of_char(const DirichletChar& chi) {
    if (chi.is_trivial())
        throw std::invalid_argument("l_function_of_char: trivial character has no polynomial L");
    const int m = chi.modulus().deg_or(0);
    const uint32_t p = chi.zeta_p();
    LPoly out;
    out.side = LPoly::Side::Character;
    out.field = chi.field();
    out.trivial_factor = chi.degree_twist();
    out.coeff.assign(static_cast<size_t>(m), CyclotomicInt::zero(p));
    for (int r = 0; r < m; ++r) {
        CyclotomicInt ar = CyclotomicInt::zero(p);
        for_each_monic(chi.field(), r, [&](const Poly& c) { ar = ar + chi(c); });
        out.coeff[static_cast<size_t>(r)] = ar;
    }
    while (out.coeff.size() > 1 && out.coeff.back().is_zero()) out.coeff.pop_back();
    return out;
}

CyclotomicInt delta_factor(const RationalFunction& f, const AdditiveCharacter& psi) {
    const int dh = f.numerator().deg_or(-1), dg = f.denominator().deg_or(0);
    if (dh != dg || dg < 1) return CyclotomicInt::one(psi.p());
    FieldElement val = f.numerator().lead() * f.field()->inv(f.denominator().lead());
    return psi.tr(val);
}

bool twist_check(const RationalFunction& f, const FieldElement& b, const AdditiveCharacter& psi) {
    RationalFunction fb(f.numerator() + Poly::constant(b) * f.denominator(), f.denominator());
    LPoly left = l_function_as(fb, psi);
    LPoly right = l_function_as(f, psi).rescaled(psi.tr(b));
    return left.coeff == right.coeff;
}

}  // namespace aszl
