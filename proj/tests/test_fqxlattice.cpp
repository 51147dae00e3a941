#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "aszl/lattice.hpp"

using namespace aszl;

namespace {
const FieldDescriptor* F3() { return make_field(3, 1); }
Poly P(std::initializer_list<int64_t> cs) { return Poly::from_int_coeffs(F3(), cs); }

Poly random_poly(const FieldDescriptor* f, int maxdeg, std::mt19937& rng) {
    std::vector<FieldElement> cs;
    for (int i = 0; i <= maxdeg; ++i) cs.push_back(f->element_at(rng() % f->q()));
    return Poly::from_coeffs(f, std::move(cs));
}

FqxLattice random_lattice(const FieldDescriptor* f, int n, int maxdeg, std::mt19937& rng) {
    for (;;) {
        std::vector<PolyVec> rows(static_cast<size_t>(n));
        for (auto& r : rows)
            for (int j = 0; j < n; ++j) r.push_back(random_poly(f, maxdeg, rng));
        if (!poly_mat_det(rows).is_zero()) return FqxLattice(std::move(rows));
    }
}
}  // namespace

TEST_CASE("vector degree and R-degree") {
    CHECK(vector_degree({Poly::one(F3()), P({0, 0, 1})}) == 2);
    CHECK(vector_degree({Poly::zero(F3()), Poly::zero(F3())}).is_neg_inf());

    // x^7 + x = x*(x^3)^2 + x has a_1(y) = y^2 + 1, so deg_R = 2
    Poly v = P({0, 1, 0, 0, 0, 0, 0, 1});
    CHECK(r_degree(v, 3) == 2);
    // an x^2 component is outside V when p = 3
    CHECK_THROWS_AS(static_cast<void>(r_degree(P({0, 0, 1}), 3)), std::invalid_argument);
    CHECK(r_degree(Poly::zero(F3()), 3).is_neg_inf());
}

TEST_CASE("basis reduction: examples") {
    // identity basis is already reduced
    FqxLattice id({{Poly::one(F3()), Poly::zero(F3())}, {Poly::zero(F3()), Poly::one(F3())}});
    CHECK(id.is_reduced());
    CHECK(id.volume_exponent() == 0);

    // congruence lattice with a = x+1, Q = x^2
    FqxLattice gamma = congruence_lattice(P({1, 1}), P({0, 0, 1}));
    CHECK(gamma.volume_exponent() == 2);
    FqxLattice red = gamma.reduced();
    std::vector<int> degs;
    for (const auto& row : red.basis()) degs.push_back(vector_degree(row).value());
    std::sort(degs.begin(), degs.end());
    CHECK(degs == std::vector<int>{1, 1});
    CHECK(red.volume_exponent() == 2);

    // the change of basis is unimodular
    Poly udet = poly_mat_det(red.reduction_transform());
    CHECK(udet.deg_or(-1) == 0);
    CHECK_FALSE(udet.is_zero());

    CHECK_THROWS_AS(FqxLattice({{Poly::x(F3()), Poly::x(F3())}, {Poly::x(F3()), Poly::x(F3())}}),
                    std::invalid_argument);
}

TEST_CASE("sum of reduced degrees equals deg det (random 3x3 over F_5)") {
    const FieldDescriptor* f5 = make_field(5, 1);
    std::mt19937 rng(101);
    for (int t = 0; t < 30; ++t) {
        FqxLattice lat = random_lattice(f5, 3, 4, rng);
        const int expect = poly_mat_det(lat.basis()).deg_or(-1);  // independent oracle
        FqxLattice red = lat.reduced();
        int sum = 0;
        for (const auto& row : red.basis()) sum += vector_degree(row).value();
        CHECK(sum == expect);
        CHECK(red.volume_exponent() == lat.volume_exponent());
        Poly udet = poly_mat_det(red.reduction_transform());
        CHECK(udet.deg_or(-1) == 0);
    }
}

TEST_CASE("predictable degree property on 500 random combinations") {
    std::mt19937 rng(202);
    int done = 0;
    while (done < 500) {
        const uint32_t q = (rng() % 2) ? 3 : 5;
        const FieldDescriptor* f = make_field(q, 1);
        const int n = 2 + static_cast<int>(rng() % 2);
        FqxLattice red = random_lattice(f, n, 3, rng).reduced();
        for (int t = 0; t < 10 && done < 500; ++t, ++done) {
            std::vector<Poly> cs;
            for (int i = 0; i < n; ++i) cs.push_back(random_poly(f, static_cast<int>(rng() % 4), rng));
            PolyVec v(static_cast<size_t>(n), Poly::zero(f));
            Degree expect = Degree::neg_inf();
            for (int i = 0; i < n; ++i) {
                Degree term = Degree::neg_inf();
                for (int j = 0; j < n; ++j) {
                    Poly prod = cs[static_cast<size_t>(i)] * red.basis()[static_cast<size_t>(i)][static_cast<size_t>(j)];
                    v[static_cast<size_t>(j)] = v[static_cast<size_t>(j)] + prod;
                    if (prod.degree() > term) term = prod.degree();
                }
                if (term > expect) expect = term;
            }
            CHECK(vector_degree(v) == expect);
        }
    }
}

TEST_CASE("count_short examples and budget") {
    FqxLattice id({{Poly::one(F3()), Poly::zero(F3())}, {Poly::zero(F3()), Poly::one(F3())}});
    CHECK(count_short(id, 0, CountConstraint::All) == 9);

    FqxLattice gamma = congruence_lattice(P({1, 1}), P({0, 0, 1}));
    CHECK(count_short(gamma, 0, CountConstraint::NonZero) == 0);

    CHECK_THROWS_AS(static_cast<void>(count_short(id, 30, CountConstraint::Primitive, 1000)),
                    BudgetExceeded);
}

TEST_CASE("primitive-vector count bound on random rank-2 lattices") {
    std::mt19937 rng(303);
    int tested = 0;
    while (tested < 100) {
        const uint32_t q = (rng() % 2) ? 2 : 3;
        const FieldDescriptor* f = make_field(q, 1);
        FqxLattice lat = random_lattice(f, 2, 3, rng);
        const int m = lat.volume_exponent();
        if (m > 6) continue;
        ++tested;
        for (int r = 0; r <= 4; ++r) {
            BigInt count = count_short(lat, r, CountConstraint::Primitive);
            const double bound =
                std::max(static_cast<double>(q), std::pow(static_cast<double>(q), 2 * r - m + 2));
            CHECK(static_cast<double>(count) <= bound + 1e-9);
        }
    }
}

TEST_CASE("per-coordinate primitive count bound") {
    std::mt19937 rng(404);
    for (int t = 0; t < 40; ++t) {
        const FieldDescriptor* f = make_field(3, 1);
        FqxLattice lat = random_lattice(f, 2, 2, rng);
        const int m = lat.volume_exponent();
        for (int r = 0; r <= 3; ++r)
            for (int s = 0; s <= 3; ++s) {
                BigInt count = count_short_per_coordinate(lat, r, s, true);
                const double bound = std::max(3.0, std::pow(3.0, r + s - m + 2));
                CHECK(static_cast<double>(count) <= bound + 1e-9);
            }
    }
}

TEST_CASE("exhaustive scan agrees with basis enumeration (rank 2, m <= 4, q <= 3)") {
    std::mt19937 rng(505);
    for (uint32_t q : {2u, 3u}) {
        const FieldDescriptor* f = make_field(q, 1);
        int done = 0;
        while (done < 5) {
            FqxLattice lat = random_lattice(f, 2, 2, rng);
            if (lat.volume_exponent() > 4) continue;
            ++done;
            for (int s = 0; s <= 3; ++s) {
                BigInt all = 0, nonzero = 0, prim = 0;
                uint64_t per_coord = 1;
                for (int i = 0; i <= s; ++i) per_coord *= q;
                per_coord *= per_coord;  // pairs
                for (uint64_t a = 0; a < per_coord; ++a) {
                    uint64_t t1 = a;
                    std::vector<FieldElement> c1, c2;
                    for (int i = 0; i <= s; ++i) {
                        c1.push_back(f->element_at(t1 % q));
                        t1 /= q;
                    }
                    for (int i = 0; i <= s; ++i) {
                        c2.push_back(f->element_at(t1 % q));
                        t1 /= q;
                    }
                    PolyVec v{Poly::from_coeffs(f, c1), Poly::from_coeffs(f, c2)};
                    auto coords = lat.coordinates(v);
                    if (!coords) continue;
                    ++all;
                    if (!(v[0].is_zero() && v[1].is_zero())) ++nonzero;
                    Poly g = Poly::zero(f);
                    bool any = false;
                    for (const auto& c : *coords) {
                        if (c.is_zero()) continue;
                        g = any ? poly_gcd(g, c) : c;
                        any = true;
                    }
                    if (any && g.is_constant()) ++prim;
                }
                CHECK(count_short(lat, s, CountConstraint::All) == all);
                CHECK(count_short(lat, s, CountConstraint::NonZero) == nonzero);
                CHECK(count_short(lat, s, CountConstraint::Primitive) == prim);
            }
        }
    }
}

TEST_CASE("short-vector count bound through the first minimum") {
    std::mt19937 rng(606);
    for (int t = 0; t < 25; ++t) {
        const uint32_t q = (rng() % 2) ? 2 : 3;
        const FieldDescriptor* f = make_field(q, 1);
        const int n = 2 + static_cast<int>(rng() % 2);
        FqxLattice lat = random_lattice(f, n, 2, rng);
        const int m = lat.volume_exponent();
        if (m > 6) continue;
        int mu = 0;
        while (count_short(lat, mu, CountConstraint::NonZero) == 0) ++mu;
        for (int s = 0; s <= 4; ++s) {
            BigInt count = count_short(lat, s, CountConstraint::All);
            const double e1 = static_cast<double>(n) * (s + 1) - m;
            const double e2 = static_cast<double>(n - 1) * (s + 1 - mu);
            const double bound = std::pow(static_cast<double>(q), std::max({0.0, e1, e2}));
            CHECK(static_cast<double>(count) <= bound + 1e-9);
        }
    }
}

TEST_CASE("congruence lattice") {
    CHECK(congruence_lattice(Poly::one(F3()), Poly::x(F3())).volume_exponent() == 1);
    CHECK(congruence_lattice(P({1, 1}), P({0, 0, 1})).volume_exponent() == 2);
    CHECK_THROWS_AS(static_cast<void>(congruence_lattice(Poly::x(F3()), P({0, 0, 1}))),
                    std::invalid_argument);
    // a member of Gamma_phi: (1, phi(x^p) mod Q)
    const Poly Q = P({0, 0, 0, 0, 1});  // x^4
    const Poly phi = P({1, 1});
    Poly phixp(F3());
    for (int j = 0; j <= phi.deg_or(0); ++j)
        phixp = phixp + Poly::constant(phi.coeff(static_cast<size_t>(j))).shift(3 * j);
    FqxLattice gamma = congruence_lattice(phixp % Q, Q);
    CHECK(gamma.contains({Poly::one(F3()), phixp % Q}));
}

TEST_CASE("small solutions of the congruence h = a g mod Q") {
    auto [g1, h1] = small_solution(Poly::one(F3()), Poly::x(F3()), 0, 0);
    CHECK(g1 == Poly::one(F3()));
    CHECK(h1 == Poly::one(F3()));

    const Poly a = P({1, 1}), Q = P({0, 0, 1});
    auto [g2, h2] = small_solution(a, Q, 1, 0);
    CHECK_FALSE((g2.is_zero() && h2.is_zero()));
    CHECK(g2.degree() <= 1);
    CHECK(h2.degree() <= 0);
    CHECK(((h2 - a * g2) % Q).is_zero());

    CHECK_THROWS_AS(static_cast<void>(small_solution(a, Q, 0, 0)), std::invalid_argument);
}

TEST_CASE("Lambda_Q basis and volume") {
    // Q = 1: Lambda = V
    RLattice triv = lambdaQ_basis(Poly::one(F3()));
    CHECK(triv.volume_exponent() == 0);
    REQUIRE(triv.basis_rows().size() == 2);

    // independent index oracle: dim(V cap deg<D) - dim(Lambda_Q cap deg<D)
    // equals deg Q once D clears the transient range
    for (const Poly& Q : {P({1, 1}), P({0, 1, 1}), P({0, 2, 0, 1})}) {
        RLattice lam = lambdaQ_basis(Q);
        CHECK(lam.volume_exponent() == Q.deg_or(0));
        const int dq = Q.deg_or(0);
        for (int D = dq + 4; D <= dq + 7; ++D) {
            int dim_v = 0;
            for (int e = 0; e < D; ++e)
                if (e % 3 != 2) ++dim_v;
            // multiples Qw of degree < D lying in V: nullspace dimension of the
            // coefficient conditions (exponents = p-1 mod p must vanish)
            int nvars = D - dq;  // deg w < D - dq
            std::vector<std::vector<int>> conds;
            for (int e = 2; e < D; e += 3) {
                std::vector<int> row(static_cast<size_t>(nvars), 0);
                for (int j = 0; j < nvars; ++j) {
                    const int k = e - j;
                    if (k >= 0 && k <= dq)
                        row[static_cast<size_t>(j)] =
                            static_cast<int>(Q.field()->index_of(Q.coeff(static_cast<size_t>(k))));
                }
                conds.push_back(std::move(row));
            }
            // rank over F_3 by elimination
            int rank = 0;
            std::vector<std::vector<int>> m = conds;
            int rows = static_cast<int>(m.size());
            int row = 0;
            for (int col = 0; col < nvars && row < rows; ++col) {
                int sel = -1;
                for (int i = row; i < rows; ++i)
                    if (m[static_cast<size_t>(i)][static_cast<size_t>(col)] % 3 != 0) {
                        sel = i;
                        break;
                    }
                if (sel < 0) continue;
                std::swap(m[static_cast<size_t>(sel)], m[static_cast<size_t>(row)]);
                const int inv = (m[static_cast<size_t>(row)][static_cast<size_t>(col)] % 3 == 1) ? 1 : 2;
                for (int i = 0; i < rows; ++i) {
                    if (i == row) continue;
                    const int fac = (m[static_cast<size_t>(i)][static_cast<size_t>(col)] * inv) % 3;
                    if (fac == 0) continue;
                    for (int j = 0; j < nvars; ++j)
                        m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                            ((m[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                              fac * m[static_cast<size_t>(row)][static_cast<size_t>(j)]) % 3 + 3) % 3;
                }
                ++rank;
                ++row;
            }
            const int dim_lambda = nvars - rank;
            CHECK(dim_v - dim_lambda == dq);
        }
    }

    CHECK_THROWS_AS(static_cast<void>(lambdaQ_basis(P({0, 0, 1}))), std::invalid_argument);
}

TEST_CASE("short-vector count bound for Lambda_Q") {
    for (const Poly& Q : {P({1, 1}), P({0, 1, 1}), P({0, 2, 0, 1})}) {
        RLattice lam = lambdaQ_basis(Q);
        const int dq = Q.deg_or(0);
        const double p = 3.0;
        for (int r = dq + 1; r <= 2 * dq + 3; ++r) {
            BigInt count = lambdaQ_count_short(lam, r);
            double expo;
            if (r < 2 * dq)
                expo = (1 - 2 / p) * r - (1 - 2 / p) * dq + 2 * p - 1;
            else
                expo = (1 - 1 / p) * r - dq + 2 * p - 1;
            CHECK(static_cast<double>(count) <= std::pow(3.0, expo) + 1e-9);
        }
        // below deg Q only the zero vector fits
        CHECK(lambdaQ_count_short(lam, dq) == 1);
        // enumeration is an exact count: every member is checked back in V
        CHECK(lambdaQ_count_short(lam, dq + 2) >= 1);
    }
}
