#include "aszl/families.hpp"

#include <stdexcept>

namespace aszl {

FamilyDescriptor FamilyDescriptor::polynomial_fd(const FieldDescriptor* f, int d) {
    FamilyDescriptor desc{Kind::PolynomialFd, f, d, Poly(f), f->zero()};
    desc.validate();
    return desc;
}

FamilyDescriptor FamilyDescriptor::polynomial_as0(const FieldDescriptor* f, int d) {
    FamilyDescriptor desc{Kind::PolynomialAS0, f, d, Poly(f), f->zero()};
    desc.validate();
    return desc;
}

FamilyDescriptor FamilyDescriptor::odd_polynomial(const FieldDescriptor* f, int d) {
    FamilyDescriptor desc{Kind::OddPolynomial, f, d, Poly(f), f->zero()};
    desc.validate();
    return desc;
}

FamilyDescriptor FamilyDescriptor::ordinary_hg(const Poly& g) {
    FamilyDescriptor desc{Kind::OrdinaryHg, g.field(), g.deg_or(0), g, g.field()->zero()};
    desc.validate();
    return desc;
}

FamilyDescriptor FamilyDescriptor::ordinary_hg_twist(const Poly& g, const FieldElement& a) {
    const int d = a.is_zero() ? g.deg_or(0) : g.deg_or(0) + 1;
    FamilyDescriptor desc{Kind::OrdinaryHgTwistA, g.field(), d, g, a};
    desc.validate();
    return desc;
}

FamilyDescriptor FamilyDescriptor::ordinary_fixed_g(int d, const Poly& g) {
    FamilyDescriptor desc{Kind::OrdinaryFixedG, g.field(), d, g, g.field()->zero()};
    desc.validate();
    return desc;
}

FamilyDescriptor FamilyDescriptor::ordinary_full(const FieldDescriptor* f, int d) {
    FamilyDescriptor desc{Kind::OrdinaryFull, f, d, Poly(f), f->zero()};
    desc.validate();
    return desc;
}

void FamilyDescriptor::validate() const {
    const uint32_t p = field->p();
    if (p < 3) throw std::invalid_argument(name() + ": requires p > 2");
    if (d < 1) throw std::invalid_argument(name() + ": requires d >= 1");
    switch (kind) {
        case Kind::PolynomialFd:
        case Kind::PolynomialAS0:
            if (d % static_cast<int>(p) == 0)
                throw std::invalid_argument(name() + ": requires gcd(d, p) = 1");
            break;
        case Kind::OddPolynomial:
            if (d % 2 == 0 || d % static_cast<int>(p) == 0)
                throw std::invalid_argument(name() + ": requires gcd(d, 2p) = 1");
            break;
        case Kind::OrdinaryHg:
            if (g.is_zero() || !g.is_monic() || g.deg_or(0) != d)
                throw std::invalid_argument(name() + ": requires monic g with deg g = d");
            if (!is_squarefree(g)) throw std::invalid_argument(name() + ": requires squarefree g");
            break;
        case Kind::OrdinaryHgTwistA:
            if (g.is_zero() || !g.is_monic() || g.deg_or(0) < 1)
                throw std::invalid_argument(name() + ": requires monic nonconstant g");
            if (!is_squarefree(g)) throw std::invalid_argument(name() + ": requires squarefree g");
            break;
        case Kind::OrdinaryFixedG: {
            const int dg = g.deg_or(0);
            if (g.is_zero() || !g.is_monic() || (dg != d && dg != d - 1))
                throw std::invalid_argument(name() + ": requires monic g with deg g in {d, d-1}");
            if (!is_squarefree(g)) throw std::invalid_argument(name() + ": requires squarefree g");
            break;
        }
        case Kind::OrdinaryFull:
            break;
    }
}

std::string FamilyDescriptor::name() const {
    switch (kind) {
        case Kind::OrdinaryFull: return "ordinary-full(d=" + std::to_string(d) + ")";
        case Kind::OrdinaryFixedG: return "ordinary-fixed-g(d=" + std::to_string(d) + ",g=" + g.to_string() + ")";
        case Kind::OrdinaryHg: return "ordinary-Hg(g=" + g.to_string() + ")";
        case Kind::OrdinaryHgTwistA: return "ordinary-Hg-twist(g=" + g.to_string() + ")";
        case Kind::PolynomialAS0: return "polynomial-AS0(d=" + std::to_string(d) + ")";
        case Kind::PolynomialFd: return "polynomial-Fd(d=" + std::to_string(d) + ")";
        case Kind::OddPolynomial: return "odd-polynomial(d=" + std::to_string(d) + ")";
    }
    return "?";
}

namespace {

// polynomials with the given free coefficient indices plus a_d != 0
void enumerate_constrained(const FieldDescriptor* f, int d, const std::vector<int>& free_idx,
                           std::vector<RationalFunction>& out) {
    const Poly one = Poly::one(f);
    uint64_t inner = 1;
    for (size_t i = 0; i < free_idx.size(); ++i) inner *= f->q();
    for (uint64_t lead = 1; lead < f->q(); ++lead) {
        for (uint64_t code = 0; code < inner; ++code) {
            std::vector<FieldElement> cs(static_cast<size_t>(d) + 1, f->zero());
            cs[static_cast<size_t>(d)] = f->element_at(lead);
            uint64_t t = code;
            for (int i : free_idx) {
                cs[static_cast<size_t>(i)] = f->element_at(t % f->q());
                t /= f->q();
            }
            out.emplace_back(Poly::from_coeffs(f, std::move(cs)), one);
        }
    }
}

std::vector<int> fd_free_indices(const FieldDescriptor* f, int d) {
    std::vector<int> idx;
    for (int i = 1; i < d; ++i)
        if (i % static_cast<int>(f->p()) != 0) idx.push_back(i);
    return idx;
}

std::vector<int> odd_free_indices(const FieldDescriptor* f, int d) {
    std::vector<int> idx;
    for (int i = 1; i < d; i += 2)
        if (i % static_cast<int>(f->p()) != 0) idx.push_back(i);
    return idx;
}

// numerators h with deg h < deg g and gcd(h, g) = 1, in odometer order
void enumerate_hg(const Poly& g, std::vector<Poly>& out) {
    const FieldDescriptor* f = g.field();
    const int dg = g.deg_or(0);
    uint64_t total = 1;
    for (int i = 0; i < dg; ++i) total *= f->q();
    for (uint64_t code = 1; code < total; ++code) {
        std::vector<FieldElement> cs(static_cast<size_t>(dg), f->zero());
        uint64_t t = code;
        for (int j = 0; j < dg && t > 0; ++j) {
            cs[static_cast<size_t>(j)] = f->element_at(t % f->q());
            t /= f->q();
        }
        Poly h = Poly::from_coeffs(f, std::move(cs));
        if (poly_gcd(h, g).is_one()) out.push_back(std::move(h));
    }
}

}  // namespace

std::vector<RationalFunction> enumerate(const FamilyDescriptor& desc) {
    desc.validate();
    const FieldDescriptor* f = desc.field;
    std::vector<RationalFunction> out;
    switch (desc.kind) {
        case FamilyDescriptor::Kind::PolynomialFd:
            enumerate_constrained(f, desc.d, fd_free_indices(f, desc.d), out);
            break;
        case FamilyDescriptor::Kind::PolynomialAS0: {
            std::vector<RationalFunction> base;
            enumerate_constrained(f, desc.d, fd_free_indices(f, desc.d), base);
            for (uint64_t b = 0; b < f->q(); ++b)
                for (const auto& m : base)
                    out.emplace_back(m.numerator() + Poly::constant(f->element_at(b)),
                                     Poly::one(f));
            break;
        }
        case FamilyDescriptor::Kind::OddPolynomial:
            enumerate_constrained(f, desc.d, odd_free_indices(f, desc.d), out);
            break;
        case FamilyDescriptor::Kind::OrdinaryHg: {
            std::vector<Poly> hs;
            enumerate_hg(desc.g, hs);
            for (auto& h : hs) out.emplace_back(std::move(h), desc.g);
            break;
        }
        case FamilyDescriptor::Kind::OrdinaryHgTwistA: {
            std::vector<Poly> hs;
            enumerate_hg(desc.g, hs);
            const Poly shift = Poly::constant(desc.a) * Poly::x(f) * desc.g;
            for (auto& h : hs) out.emplace_back(h + shift, desc.g);
            break;
        }
        case FamilyDescriptor::Kind::OrdinaryFixedG: {
            const int dg = desc.g.deg_or(0);
            // h runs over polynomials coprime to g with deg h <= d (deg g = d)
            // or deg h = d exactly (deg g = d - 1)
            uint64_t total = 1;
            for (int i = 0; i <= desc.d; ++i) total *= f->q();
            for (uint64_t code = 1; code < total; ++code) {
                std::vector<FieldElement> cs(static_cast<size_t>(desc.d) + 1, f->zero());
                uint64_t t = code;
                for (int j = 0; j <= desc.d && t > 0; ++j) {
                    cs[static_cast<size_t>(j)] = f->element_at(t % f->q());
                    t /= f->q();
                }
                Poly h = Poly::from_coeffs(f, std::move(cs));
                if (dg == desc.d - 1 && h.deg_or(-1) != desc.d) continue;
                if (!poly_gcd(h, desc.g).is_one()) continue;
                out.emplace_back(std::move(h), desc.g);
            }
            break;
        }
        case FamilyDescriptor::Kind::OrdinaryFull: {
            for (int dg : {desc.d, desc.d - 1}) {
                if (dg < 1) continue;
                for_each_monic(f, dg, [&](const Poly& g) {
                    if (!is_squarefree(g)) return;
                    auto sub = enumerate(FamilyDescriptor::ordinary_fixed_g(desc.d, g));
                    for (auto& m : sub) out.push_back(std::move(m));
                });
            }
            break;
        }
    }
    return out;
}

BigInt family_size_closed_form(const FamilyDescriptor& desc) {
    const FieldDescriptor* f = desc.field;
    const BigInt q = f->q();
    auto qpow = [&](size_t e) {
        BigInt r = 1;
        for (size_t i = 0; i < e; ++i) r *= q;
        return r;
    };
    switch (desc.kind) {
        case FamilyDescriptor::Kind::PolynomialFd:
            return (q - 1) * qpow(fd_free_indices(f, desc.d).size());
        case FamilyDescriptor::Kind::PolynomialAS0:
            return q * (q - 1) * qpow(fd_free_indices(f, desc.d).size());
        case FamilyDescriptor::Kind::OddPolynomial:
            return (q - 1) * qpow(odd_free_indices(f, desc.d).size());
        case FamilyDescriptor::Kind::OrdinaryHg:
        case FamilyDescriptor::Kind::OrdinaryHgTwistA:
            return euler_phi(desc.g);
        case FamilyDescriptor::Kind::OrdinaryFixedG:
            return desc.g.deg_or(0) == desc.d ? q * euler_phi(desc.g)
                                              : (q - 1) * q * euler_phi(desc.g);
        case FamilyDescriptor::Kind::OrdinaryFull: {
            BigInt total = 0;
            for (int dg : {desc.d, desc.d - 1}) {
                if (dg < 1) continue;
                for_each_monic(f, dg, [&](const Poly& g) {
                    if (!is_squarefree(g)) return;
                    total += family_size_closed_form(FamilyDescriptor::ordinary_fixed_g(desc.d, g));
                });
            }
            return total;
        }
    }
    throw std::logic_error("unreachable");
}

int family_delta(const FamilyDescriptor& desc) {
    switch (desc.kind) {
        case FamilyDescriptor::Kind::PolynomialFd:
        case FamilyDescriptor::Kind::PolynomialAS0:
        case FamilyDescriptor::Kind::OddPolynomial:
            return desc.d - 1;  // genus (p-1)(d-1)/2
        default:
            return 2 * (desc.d - 1);  // genus (p-1)(d-1)
    }
}

int member_delta(const RationalFunction& f) {
    const int dh = f.numerator().deg_or(0);
    if (f.is_polynomial()) return dh - 1;
    return 2 * (std::max(dh, f.denominator().deg_or(0)) - 1);
}

DirichletChar chi_for_member(const RationalFunction& f, const AdditiveCharacter& psi) {
    if (f.is_polynomial()) {
        Poly fp = f.numerator();
        const FieldElement f0 = fp.constant_term();
        if (!f0.is_zero())
            throw std::invalid_argument(
                "chi_for_member: shift the constant term off an AS_d^0 member first (it twists u)");
        return chi_poly(fp, psi);
    }
    const Poly& g = f.denominator();
    const Poly& h = f.numerator();
    const int dh = h.deg_or(-1), dg = g.deg_or(0);
    if (dh < dg) return chi_ord(f, psi);
    if (dh == dg) {
        // f = b + h1/g with b constant; the shift becomes a degree twist
        auto [b, h1] = h.divmod(g);
        if (!b.is_constant()) throw std::logic_error("unreachable: quotient must be constant");
        return chi_ord(RationalFunction(h1, g), psi).with_degree_twist(psi.tr(b.constant_term()));
    }
    throw std::invalid_argument(
        "chi_for_member: deg h > deg g has conductor support at infinity; no Dirichlet model");
}

std::optional<CyclotomicInt> expected_trivial_factor(const RationalFunction& f,
                                                     const AdditiveCharacter& psi) {
    if (f.is_polynomial()) return CyclotomicInt::one(psi.p());
    const int dh = f.numerator().deg_or(-1), dg = f.denominator().deg_or(0);
    if (dh < dg) return CyclotomicInt::one(psi.p());
    if (dh == dg) return delta_factor(f, psi);
    return std::nullopt;
}

}  // namespace aszl
