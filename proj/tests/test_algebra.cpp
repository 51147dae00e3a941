#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "aszl/arith.hpp"
#include "aszl/cyclotomic.hpp"
#include "aszl/field.hpp"
#include "aszl/poly.hpp"

using namespace aszl;

TEST_CASE("make_field basics") {
    const FieldDescriptor* f3 = make_field(3, 1);
    CHECK(f3->q() == 3);
    CHECK(f3->modulus_poly() == std::vector<uint32_t>{0, 1});  // x

    const FieldDescriptor* f9 = make_field(3, 2);
    CHECK(f9->q() == 9);
    CHECK(f9->modulus_poly() == std::vector<uint32_t>{1, 0, 1});  // x^2+1

    CHECK_THROWS_AS(make_field(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_field(3, 0), std::invalid_argument);

    // deterministic interning
    CHECK(make_field(3, 2) == f9);
}

TEST_CASE("trace to prime field") {
    const FieldDescriptor* f9 = make_field(3, 2);
    CHECK(trace_to_prime(f9->zero()).is_zero());
    CHECK(trace_to_prime_int(f9->one()) == 2);  // 1 + 1^3 = 2

    // independent oracle in F_27: a + a^3 + a^9 by repeated Frobenius
    const FieldDescriptor* f27 = make_field(3, 3);
    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
        FieldElement a = f27->element_at(rng() % f27->q());
        FieldElement s = a + f27->pow(a, 3) + f27->pow(a, 9);
        CHECK(trace_to_prime_int(a) == s.c[0]);
        CHECK(s.c[1] == 0);
        CHECK(s.c[2] == 0);
    }
}

TEST_CASE("trace additivity and Frobenius invariance, exhaustive q <= 81") {
    for (auto [p, k] : std::vector<std::pair<uint32_t, uint32_t>>{
             {3, 1}, {3, 2}, {3, 3}, {3, 4}, {5, 1}, {5, 2}, {7, 1}, {7, 2}}) {
        const FieldDescriptor* f = make_field(p, k);
        for (uint64_t i = 0; i < f->q(); ++i) {
            FieldElement a = f->element_at(i);
            CHECK(trace_to_prime_int(a) == trace_to_prime_int(f->frobenius(a)));
            for (uint64_t j = 0; j < f->q(); ++j) {
                FieldElement b = f->element_at(j);
                CHECK((trace_to_prime_int(a) + trace_to_prime_int(b)) % p ==
                      trace_to_prime_int(a + b));
            }
        }
    }
}

TEST_CASE("additive characters") {
    AdditiveCharacter psi1(3, 1), psi2(3, 2);
    CHECK(psi1.at_int(0) == CyclotomicInt::one(3));
    CHECK(psi1.at_int(1) == CyclotomicInt::zeta_pow(3, 1));
    CHECK(psi2.at_int(2) == CyclotomicInt::zeta_pow(3, 1));  // zeta^4 = zeta
    CHECK_THROWS_AS(AdditiveCharacter(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(AdditiveCharacter(3, 3), std::invalid_argument);

    // psi(a+b) = psi(a) psi(b), and sum over F_p vanishes exactly
    for (uint32_t p : {3u, 5u, 7u}) {
        for (uint32_t m = 1; m < p; ++m) {
            AdditiveCharacter psi(p, m);
            CyclotomicInt sum = CyclotomicInt::zero(p);
            for (uint32_t a = 0; a < p; ++a) {
                sum = sum + psi.at_int(a);
                for (uint32_t b = 0; b < p; ++b)
                    CHECK(psi.at_int(a + b) == psi.at_int(a) * psi.at_int(b));
            }
            CHECK(sum.is_zero());
        }
    }
}

TEST_CASE("cyclotomic integers: ring axioms, embedding, conjugation") {
    std::mt19937 rng(11);
    for (uint32_t p : {3u, 5u}) {
        auto rand_cyc = [&] {
            CyclotomicInt v = CyclotomicInt::zero(p);
            for (uint32_t i = 0; i < p; ++i)
                v = v + CyclotomicInt::zeta_pow(p, i).scaled(BigInt(static_cast<int>(rng() % 21) - 10));
            return v;
        };
        for (int t = 0; t < 40; ++t) {
            CyclotomicInt a = rand_cyc(), b = rand_cyc(), c = rand_cyc();
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a - a).is_zero());
            // the embedding is a ring map
            auto ea = a.embed(), eb = b.embed();
            CHECK(std::abs((a * b).embed() - ea * eb) < 1e-12 * (1.0 + std::abs(ea * eb)));
            CHECK(std::abs((a + b).embed() - (ea + eb)) < 1e-12 * (1.0 + std::abs(ea + eb)));
            // conjugation matches complex conjugation under the embedding
            CHECK(std::abs(a.conj_inv().embed() - std::conj(ea)) < 1e-9);
        }
        // 1 + zeta + ... + zeta^(p-1) = 0 and |psi values| = 1
        CyclotomicInt s = CyclotomicInt::zero(p);
        for (uint32_t i = 0; i < p; ++i) s = s + CyclotomicInt::zeta_pow(p, i);
        CHECK(s.is_zero());
        for (uint32_t i = 0; i < p; ++i)
            CHECK(std::abs(std::abs(CyclotomicInt::zeta_pow(p, i).embed()) - 1.0) < 1e-12);
    }
}

TEST_CASE("poly gcd / squarefree / irreducible") {
    const FieldDescriptor* f3 = make_field(3, 1);
    Poly a = Poly::from_int_coeffs(f3, {-1, 0, 1});  // x^2 - 1
    Poly b = Poly::from_int_coeffs(f3, {-1, 1});     // x - 1
    CHECK(poly_gcd(a, b) == Poly::from_int_coeffs(f3, {2, 1}));  // x + 2

    CHECK_FALSE(is_squarefree(Poly::from_int_coeffs(f3, {0, 0, 1})));  // x^2
    CHECK(is_squarefree(Poly::from_int_coeffs(f3, {0, 1, 1})));        // x(x+1)

    // x^2+1 over F_3: no roots, degree 2, hence irreducible (root-search oracle)
    Poly c = Poly::from_int_coeffs(f3, {1, 0, 1});
    bool has_root = false;
    for (uint64_t i = 0; i < 3; ++i)
        if (c.eval(f3->element_at(i)).is_zero()) has_root = true;
    CHECK_FALSE(has_root);
    CHECK(is_irreducible(c));
    CHECK_FALSE(is_irreducible(Poly::from_int_coeffs(f3, {2, 0, 1})));  // x^2+2 = (x+1)(x+2)

    CHECK_THROWS_AS(poly_gcd(Poly::zero(f3), Poly::zero(f3)), std::domain_error);
}

TEST_CASE("von Mangoldt function") {
    const FieldDescriptor* f3 = make_field(3, 1);
    CHECK(von_mangoldt(Poly::x(f3)) == 1);
    CHECK(von_mangoldt(Poly::from_int_coeffs(f3, {0, 0, 1})) == 1);      // x^2 = x^2
    CHECK(von_mangoldt(Poly::from_int_coeffs(f3, {0, 1, 1})) == 0);      // x(x+1)
    CHECK(von_mangoldt(Poly::from_int_coeffs(f3, {1, 0, 1})) == 2);      // irreducible quadratic
    CHECK(von_mangoldt(Poly::from_int_coeffs(f3, {0, 0, 0, 1})) == 1);   // x^3 (p | exponent)
    CHECK_THROWS_AS(von_mangoldt(Poly::from_int_coeffs(f3, {0, 2})), std::invalid_argument);
}

TEST_CASE("prime polynomial theorem: sum of Lambda over degree r equals q^r") {
    for (uint32_t q : {3u, 5u}) {
        const FieldDescriptor* f = make_field(q, 1);
        for (int r = 1; r <= 5; ++r) {
            BigInt sum = 0;
            for_each_monic(f, r, [&](const Poly& c) { sum += von_mangoldt(c); });
            BigInt expect = 1;
            for (int i = 0; i < r; ++i) expect *= q;
            CHECK(sum == expect);
            // the cached prime-power table must agree with the full scan
            BigInt sum2 = 0;
            for (const auto& pp : prime_powers_of_degree(f, r)) sum2 += pp.lambda;
            CHECK(sum2 == expect);
        }
    }
}

TEST_CASE("mobius, euler phi, divisor count, monic divisors") {
    const FieldDescriptor* f3 = make_field(3, 1);
    Poly x = Poly::x(f3);
    Poly xx1 = Poly::from_int_coeffs(f3, {0, 1, 1});  // x(x+1)
    CHECK(mobius(x) == -1);
    CHECK(mobius(Poly::from_int_coeffs(f3, {0, 0, 1})) == 0);
    CHECK(mobius(xx1) == 1);
    CHECK(euler_phi(x) == 2);
    CHECK(euler_phi(xx1) == 4);
    CHECK(divisor_count(xx1) == 4);
    auto divs = monic_divisors(xx1);
    REQUIRE(divs.size() == 4);
    CHECK(divs[0].is_one());
    CHECK(divs.back() == xx1);
}

TEST_CASE("sum over roots") {
    const FieldDescriptor* f3 = make_field(3, 1);
    auto rf = [&](const Poly& h) { return RationalFunction(h, Poly::one(f3)); };

    // u = x, c = x^2+1: the root sum is -(coefficient of x) = 0
    CHECK(sum_over_roots(rf(Poly::x(f3)), Poly::from_int_coeffs(f3, {1, 0, 1})).is_zero());
    // u = x^2, c = x+2: single root alpha = 1
    CHECK(sum_over_roots(rf(Poly::from_int_coeffs(f3, {0, 0, 1})),
                         Poly::from_int_coeffs(f3, {2, 1})) == f3->from_int(1));
    // u = x+1, c = x^2: double root 0, sum = 2*u(0) = 2
    CHECK(sum_over_roots(rf(Poly::from_int_coeffs(f3, {1, 1})),
                         Poly::from_int_coeffs(f3, {0, 0, 1})) == f3->from_int(2));

    CHECK_THROWS_AS(sum_over_roots(RationalFunction(Poly::one(f3), Poly::x(f3)),
                                   Poly::from_int_coeffs(f3, {0, 0, 1})),
                    std::invalid_argument);

    // additivity over products of moduli
    std::mt19937 rng(13);
    for (int t = 0; t < 30; ++t) {
        Poly c1 = Poly::monic_at(f3, 2, rng() % 9);
        Poly c2 = Poly::monic_at(f3, 1 + static_cast<int>(rng() % 2), rng() % 9);
        Poly h = Poly::from_int_coeffs(
            f3, {static_cast<int64_t>(rng() % 3), static_cast<int64_t>(rng() % 3),
                 static_cast<int64_t>(rng() % 3)});
        FieldElement lhs = sum_over_roots(rf(h), c1 * c2);
        FieldElement r1 = sum_over_roots(rf(h), c1);
        FieldElement r2 = sum_over_roots(rf(h), c2);
        CHECK(lhs == r1 + r2);
    }
}

TEST_CASE("inverse root power sums") {
    const FieldDescriptor* f3 = make_field(3, 1);
    // c = x + 2: p_1 = -c_1/c_0 = 1
    auto ps = inverse_root_power_sums(Poly::from_int_coeffs(f3, {2, 1}), 3);
    CHECK(ps[0] == f3->from_int(1));
    // c = 1: empty root multiset
    auto ps1 = inverse_root_power_sums(Poly::one(f3), 4);
    for (const auto& v : ps1) CHECK(v.is_zero());

    CHECK_THROWS_AS(inverse_root_power_sums(Poly::x(f3), 2), std::invalid_argument);

    // cross-check against sum_over_roots on the reversed polynomial,
    // exhaustively for q=3, deg c <= 3, j <= 4
    for (int d = 1; d <= 3; ++d) {
        for_each_monic(f3, d, [&](const Poly& c) {
            if (c.constant_term().is_zero()) return;
            auto p = inverse_root_power_sums(c, 4);
            std::vector<FieldElement> rev_coeffs;
            for (int i = d; i >= 0; --i) rev_coeffs.push_back(c.coeff(static_cast<size_t>(i)));
            Poly rev = Poly::from_coeffs(f3, rev_coeffs).monic();
            for (int j = 1; j <= 4; ++j) {
                Poly xj = Poly::x(f3).pow(static_cast<uint64_t>(j));
                CHECK(p[static_cast<size_t>(j - 1)] ==
                      sum_over_roots(RationalFunction(xj, Poly::one(f3)), rev));
            }
        });
    }
}

TEST_CASE("degree sentinel for the zero polynomial") {
    const FieldDescriptor* f3 = make_field(3, 1);
    Poly z = Poly::zero(f3);
    CHECK(z.degree().is_neg_inf());
    CHECK_THROWS_AS(z.degree().value(), std::domain_error);
    CHECK(z.degree() < 0);
    CHECK(z.degree() < Poly::one(f3).degree());
    CHECK(Poly::x(f3).degree() == 1);
}

TEST_CASE("field element arithmetic sanity in extensions") {
    const FieldDescriptor* f9 = make_field(3, 2);
    for (uint64_t i = 0; i < 9; ++i) {
        FieldElement a = f9->element_at(i);
        if (a.is_zero()) continue;
        CHECK(f9->mul(a, f9->inv(a)) == f9->one());
        CHECK(f9->pow(a, 8) == f9->one());  // Lagrange
    }
    // embedding F_9 into F_81 respects arithmetic
    const auto& ext = extension_field(f9, 2);
    CHECK(ext.big->q() == 81);
    for (uint64_t i = 0; i < 9; ++i)
        for (uint64_t j = 0; j < 9; ++j) {
            FieldElement a = f9->element_at(i), b = f9->element_at(j);
            CHECK(embed(a * b, ext) == ext.big->mul(embed(a, ext), embed(b, ext)));
            CHECK(embed(a + b, ext) == ext.big->add(embed(a, ext), embed(b, ext)));
        }
}
