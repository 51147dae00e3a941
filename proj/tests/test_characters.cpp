#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "aszl/characters.hpp"
#include "aszl/families.hpp"
#include "aszl/lfunction.hpp"

using namespace aszl;

namespace {
const FieldDescriptor* F3() { return make_field(3, 1); }
Poly P(std::initializer_list<int64_t> cs) { return Poly::from_int_coeffs(F3(), cs); }
CyclotomicInt zeta(int64_t e) { return CyclotomicInt::zeta_pow(3, e); }
}  // namespace

TEST_CASE("chi_poly examples and family constraint errors") {
    AdditiveCharacter psi(3, 1);
    DirichletChar chi = chi_poly(P({0, 1}), psi);  // f = x
    CHECK(chi(P({2, 1})) == zeta(1));              // c = x+2
    CHECK(chi(Poly::one(F3())) == CyclotomicInt::one(3));
    CHECK(chi(Poly::x(F3())).is_zero());

    CHECK_THROWS_WITH_AS(static_cast<void>(chi_poly(P({1, 1}), psi)),
                         "chi_poly: family requires f(0) = 0", std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(chi_poly(P({0, 0, 0, 1}), psi)), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(chi_poly(P({0, 1, 0, 0, 1, 0, 1}), psi)),
                    std::invalid_argument);  // a_6 = a_{2p} coefficient... a_i = 0 for p|i violated
}

TEST_CASE("chi_ord examples, modulus g^2 invariance") {
    AdditiveCharacter psi(3, 1);
    RationalFunction f(Poly::one(F3()), Poly::x(F3()));  // 1/x
    DirichletChar chi = chi_ord(f, psi);
    CHECK(chi(P({1, 1})) == zeta(2));  // c = x+1, root -1, 1/(-1) = 2
    CHECK(chi(Poly::x(F3())).is_zero());

    // c1 = c2 mod g^2, both coprime to g => equal values
    const Poly g2 = Poly::x(F3()) * Poly::x(F3());
    for (uint64_t i = 0; i < 81; ++i) {
        Poly c1 = Poly::monic_at(F3(), 4, i);
        if (c1.constant_term().is_zero()) continue;
        Poly c2 = c1 + g2 * P({1, 2, 1});
        CHECK(chi(c1) == chi(c2));
    }

    CHECK_THROWS_AS(static_cast<void>(chi_ord(RationalFunction(Poly::one(F3()), P({0, 0, 1})), psi)),
                    std::invalid_argument);  // g = x^2 not squarefree
    CHECK_THROWS_AS(static_cast<void>(chi_ord(RationalFunction(P({0, 0, 1}), P({0, 1, 1})), psi)),
                    std::invalid_argument);  // deg h = deg g
}

TEST_CASE("chi_linear_twist examples") {
    AdditiveCharacter psi(3, 1);
    const Poly Q = P({0, 1, 1});  // x(x+1), any modulus works here
    DirichletChar chi0 = chi_linear_twist(F3()->zero(), Q, psi);
    DirichletChar chi1 = chi_linear_twist(F3()->from_int(1), Q, psi);
    CHECK(chi0(P({2, 1})) == CyclotomicInt::one(3));
    CHECK(chi1(P({2, 1})) == zeta(1));  // root of x+2 is 1
    // multiplicativity: root multisets concatenate
    Poly c1 = P({2, 1}), c2 = P({2, 0, 1});
    CHECK(chi1(c1 * c2) == chi1(c1) * chi1(c2));
}

TEST_CASE("multiplicativity of every backend, exhaustive deg <= 3 at q=3") {
    AdditiveCharacter psi(3, 1);
    std::vector<DirichletChar> chars;
    chars.push_back(chi_poly(P({0, 1, 1}), psi));                                // F_2 member
    chars.push_back(chi_ord(RationalFunction(Poly::one(F3()), Poly::x(F3())), psi));
    chars.push_back(chi_linear_twist(F3()->from_int(2), Poly::x(F3()), psi));
    chars.push_back(DirichletChar::trivial(P({0, 0, 1}), 3));
    for (const auto& chi : chars) {
        for (uint64_t i = 0; i < 81; ++i) {
            for (uint64_t j = 0; j < 81; ++j) {
                // all polynomials of degree <= 3, not only monic ones
                Poly a = Poly::from_int_coeffs(
                    F3(), {static_cast<int64_t>(i % 3), static_cast<int64_t>((i / 3) % 3),
                           static_cast<int64_t>((i / 9) % 3), static_cast<int64_t>(i / 27)});
                Poly b = Poly::from_int_coeffs(
                    F3(), {static_cast<int64_t>(j % 3), static_cast<int64_t>((j / 3) % 3),
                           static_cast<int64_t>((j / 9) % 3), static_cast<int64_t>(j / 27)});
                CHECK(chi(a * b) == chi(a) * chi(b));
            }
        }
    }
}

TEST_CASE("chi_poly members are primitive order-p even characters (F_2, q=3)") {
    AdditiveCharacter psi(3, 1);
    auto fam = enumerate(FamilyDescriptor::polynomial_fd(F3(), 2));
    REQUIRE(fam.size() == 6);
    for (const auto& m : fam) {
        DirichletChar chi = chi_poly(m.numerator(), psi);
        CHECK(character_order(chi) == 3);
        CHECK(parity(chi) == 1);
        CHECK(is_primitive(chi));
        // chi^p is trivial
        CHECK(chi.times(chi).times(chi).is_trivial());
        // even: value 1 on all constants
        for (int64_t a = 1; a <= 2; ++a)
            CHECK(chi(Poly::constant(F3()->from_int(a))) == CyclotomicInt::one(3));
    }
}

TEST_CASE("bijection with the generically built order-p characters") {
    AdditiveCharacter psi(3, 1);
    for (int d : {2, 4}) {
        auto fam = enumerate(FamilyDescriptor::polynomial_fd(F3(), d));
        const Poly mod = Poly::x(F3()).pow(static_cast<uint64_t>(d + 1));
        CharGroup all = all_order_p_characters(mod, psi);
        auto prim = all.primitive_members();
        CHECK(prim.size() == fam.size());  // one character per family member
        // injectivity and image: every chi_f is primitive and distinct
        std::set<std::string> seen;
        for (const auto& m : fam) {
            DirichletChar chi = chi_poly_mod(m.numerator(), psi, d + 1);
            CHECK(chi.is_primitive());
            std::string fp;
            for (const auto& v : chi.table()) fp += v.to_string() + ";";
            seen.insert(fp);
        }
        CHECK(seen.size() == fam.size());
        std::set<std::string> prim_fp;
        for (const auto& c : prim) {
            std::string fp;
            for (const auto& v : c.table()) fp += v.to_string() + ";";
            prim_fp.insert(fp);
        }
        CHECK(prim_fp == seen);
    }
}

TEST_CASE("ordinary bijection: primitive order-p characters mod g^2 number phi(g)") {
    AdditiveCharacter psi(3, 1);
    const Poly g = P({0, 1, 1});  // x(x+1)
    CharGroup all = all_order_p_characters(g * g, psi);
    auto prim = all.primitive_members();
    CHECK(BigInt(prim.size()) == euler_phi(g));
    auto fam = enumerate(FamilyDescriptor::ordinary_hg(g));
    REQUIRE(BigInt(fam.size()) == euler_phi(g));
    std::set<std::string> img, primfp;
    for (const auto& m : fam) {
        DirichletChar chi = chi_ord(m, psi);
        CHECK(chi.is_primitive());
        CHECK(chi.order() == 3);
        std::string fp;
        for (const auto& v : chi.table()) fp += v.to_string() + ";";
        img.insert(fp);
    }
    for (const auto& c : prim) {
        std::string fp;
        for (const auto& v : c.table()) fp += v.to_string() + ";";
        primfp.insert(fp);
    }
    CHECK(img == primfp);
}

TEST_CASE("psi-independence of the L-function multiset (Cor 2.3)") {
    auto fam = enumerate(FamilyDescriptor::polynomial_fd(F3(), 2));
    std::multiset<std::string> m1, m2;
    for (const auto& f : fam) {
        for (uint32_t m = 1; m <= 2; ++m) {
            LPoly L = l_function_of_char(chi_poly(f.numerator(), AdditiveCharacter(3, m)));
            std::string fp;
            for (const auto& c : L.coeff) fp += c.to_string() + ";";
            (m == 1 ? m1 : m2).insert(fp);
        }
    }
    CHECK(m1 == m2);
}

TEST_CASE("l_function_of_char basics") {
    AdditiveCharacter psi(3, 1);
    DirichletChar chi = chi_poly(P({0, 0, 1}), psi);  // f = x^2
    LPoly L = l_function_of_char(chi);
    CHECK(L.coeff[0] == CyclotomicInt::one(3));           // A_0 = 1
    CHECK(L.coeff[1] == zeta(1).scaled(2));               // A_1 = 2 zeta_3
    CHECK_THROWS_AS(static_cast<void>(l_function_of_char(DirichletChar::trivial(P({0, 0, 1}), 3))),
                    std::invalid_argument);
}

TEST_CASE("group H for the odd family, d=5, q=3") {
    AdditiveCharacter psi(3, 1);
    CharGroup H = group_H_odd(5, F3(), psi);
    CHECK(H.size() == 9);  // span of x, x^5
    auto prim = H.primitive_members();
    CHECK(prim.size() == 6);  // = #AS_5^{0,odd}
    bool has_trivial = false;
    for (const auto& m : H.members())
        if (m.is_trivial()) has_trivial = true;
    CHECK(has_trivial);
    CHECK(H.verify_closure());
    CHECK_THROWS_AS(static_cast<void>(group_H_odd(4, F3(), psi)), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(group_H_odd(3, F3(), psi)), std::invalid_argument);

    // primitive members of H never arise by inducing from x^5
    for (const auto& m : prim) CHECK_FALSE(m.has_period(Poly::x(F3()).pow(5)));
}

TEST_CASE("orthogonal groups") {
    AdditiveCharacter psi(3, 1);
    const Poly x3 = Poly::x(F3()).pow(3);

    // B = {1}: all units
    CharGroup triv(x3, {DirichletChar::trivial(x3, 3)});
    CHECK(triv.orthogonal_set().count() == units_mod(x3).size());

    // full order-p group mod x^3: orthogonal group = p-th power residues
    CharGroup all = all_order_p_characters(x3, psi);
    ResidueSet orth = all.orthogonal_set();
    ResidueSet cubes = pth_power_residues(x3);
    CHECK(orth.member == cubes.member);
    // which are exactly the units congruent to some phi(x^p) mod Q
    std::set<Poly> expected;
    for (uint64_t i = 0; i < 27; ++i) {
        Poly phi = Poly::from_int_coeffs(F3(), {static_cast<int64_t>(i % 3),
                                                static_cast<int64_t>((i / 3) % 3),
                                                static_cast<int64_t>(i / 9)});
        if (phi.constant_term().is_zero()) continue;
        Poly gx3 = Poly(F3());
        for (int j = 0; j <= phi.deg_or(0); ++j)
            gx3 = gx3 + Poly::constant(phi.coeff(static_cast<size_t>(j))) *
                            Poly::x(F3()).pow(static_cast<uint64_t>(3 * j));
        expected.insert(gx3 % x3);
    }
    std::set<Poly> got;
    for (const auto& r : orth.residues()) got.insert(r);
    CHECK(got == expected);
}

TEST_CASE("odd-family orthogonal group is the product set A*B") {
    AdditiveCharacter psi(3, 1);
    const int d = 5;
    CharGroup H = group_H_odd(d, F3(), psi);
    for (int qdeg : {d, d + 1}) {
        const Poly Q = Poly::x(F3()).pow(static_cast<uint64_t>(qdeg));
        // H_Q: members of H with period Q, viewed on the units mod Q
        CharGroup HQ = H.period_subgroup(Q);
        const UnitGroup& U = units_mod(Q);
        std::set<Poly> orth;
        for (size_t i = 0; i < U.size(); ++i) {
            bool all_one = true;
            for (const auto& chi : HQ.members())
                if (!chi(U.unit(i)).is_one()) all_one = false;
            if (all_one) orth.insert(U.unit(i));
        }
        // A: residues of g(x^2), B: residues of g(x^p), constant terms nonzero
        std::set<Poly> A, B;
        const int half = (qdeg + 1) / 2, third = qdeg / 3 + 1;
        uint64_t totA = 1;
        for (int i = 0; i <= half; ++i) totA *= 3;
        for (uint64_t c = 0; c < totA; ++c) {
            std::vector<FieldElement> cs;
            uint64_t t = c;
            for (int j = 0; j <= half; ++j) {
                cs.push_back(F3()->element_at(t % 3));
                t /= 3;
            }
            Poly g = Poly::from_coeffs(F3(), cs);
            if (g.constant_term().is_zero()) continue;
            Poly gx2(F3());
            for (int j = 0; j <= g.deg_or(0); ++j)
                gx2 = gx2 + Poly::constant(g.coeff(static_cast<size_t>(j))) *
                                Poly::x(F3()).pow(static_cast<uint64_t>(2 * j));
            A.insert(gx2 % Q);
        }
        uint64_t totB = 1;
        for (int i = 0; i <= third; ++i) totB *= 3;
        for (uint64_t c = 0; c < totB; ++c) {
            std::vector<FieldElement> cs;
            uint64_t t = c;
            for (int j = 0; j <= third; ++j) {
                cs.push_back(F3()->element_at(t % 3));
                t /= 3;
            }
            Poly g = Poly::from_coeffs(F3(), cs);
            if (g.constant_term().is_zero()) continue;
            Poly gx3(F3());
            for (int j = 0; j <= g.deg_or(0); ++j)
                gx3 = gx3 + Poly::constant(g.coeff(static_cast<size_t>(j))) *
                                Poly::x(F3()).pow(static_cast<uint64_t>(3 * j));
            B.insert(gx3 % Q);
        }
        std::set<Poly> AB;
        for (const auto& a : A)
            for (const auto& b : B) AB.insert((a * b) % Q);
        CHECK(orth == AB);
    }
}

TEST_CASE("p-th power residues") {
    ResidueSet s2 = pth_power_residues(P({0, 0, 1}));  // x^2
    std::set<Poly> got;
    for (const auto& r : s2.residues()) got.insert(r);
    CHECK(got == std::set<Poly>{Poly::one(F3()), Poly::constant(F3()->from_int(2))});

    ResidueSet s1 = pth_power_residues(Poly::x(F3()));
    CHECK(s1.count() == 2);  // {1, 2}
    CHECK(s1.contains_poly(Poly::one(F3())));
}

TEST_CASE("period subgroups form a lattice; #H_{gQ} = q^{deg Q}") {
    AdditiveCharacter psi(3, 1);
    const Poly g = P({0, 1, 1});  // x(x+1), squarefree
    CharGroup H = all_order_p_characters(g * g, psi);
    for (const auto& Q : monic_divisors(g)) {
        CharGroup sub = H.period_subgroup(g * Q);
        BigInt expect = 1;
        for (int i = 0; i < Q.deg_or(0); ++i) expect *= 3;
        CHECK(BigInt(sub.size()) == expect);
    }
    // containment along divisibility
    CharGroup h1 = H.period_subgroup(g);
    CharGroup h2 = H.period_subgroup(g * Poly::x(F3()));
    std::set<std::string> fp2;
    for (const auto& c : h2.members()) {
        std::string fp;
        for (const auto& v : c.table()) fp += v.to_string() + ";";
        fp2.insert(fp);
    }
    for (const auto& c : h1.members()) {
        std::string fp;
        for (const auto& v : c.table()) fp += v.to_string() + ";";
        CHECK(fp2.count(fp) == 1);
    }
}

TEST_CASE("induced characters are not primitive; trivial character order 1") {
    AdditiveCharacter psi(3, 1);
    DirichletChar chi = chi_poly(P({0, 0, 1}), psi);  // primitive mod x^3
    DirichletChar ind = chi.induced_to(Poly::x(F3()).pow(5));
    CHECK_FALSE(ind.is_primitive());
    CHECK(DirichletChar::trivial(P({0, 0, 1}), 3).order() == 1);
}
