#include "aszl/arith.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace aszl {

uint64_t pow_u64(uint64_t base, uint32_t e) {
    uint64_t r = 1;
    while (e--) r *= base;
    return r;
}

AdditiveCharacter::AdditiveCharacter(uint32_t p, uint32_t m) : p_(p), m_(m) {
    if (p < 2) throw std::invalid_argument("additive character needs a prime p >= 2");
    if (m % p == 0) throw std::invalid_argument("m = 0 mod p gives the trivial additive character");
    if (m >= p) throw std::invalid_argument("additive character index m must lie in 1..p-1");
}

CyclotomicInt AdditiveCharacter::operator()(const FieldElement& a) const {
    if (a.field->k() != 1 || a.field->p() != p_)
        throw std::invalid_argument("additive character argument must lie in F_p");
    return at_int(a.c[0]);
}

CyclotomicInt AdditiveCharacter::at_int(int64_t a) const {
    return CyclotomicInt::zeta_pow(p_, static_cast<int64_t>(m_) * a);
}

CyclotomicInt AdditiveCharacter::tr(const FieldElement& a) const {
    if (a.field->p() != p_) throw std::invalid_argument("characteristic mismatch in psi(tr(.))");
    return at_int(trace_to_prime_int(a));
}

int von_mangoldt(const Poly& c) {
    if (c.is_zero() || !c.is_monic()) throw std::invalid_argument("von_mangoldt: input must be monic");
    const int n = c.deg_or(0);
    if (n < 1) return 0;
    // perfect-power detection: peel p-th roots while the derivative vanishes,
    // then split off the radical with gcd(base, base')
    Poly base = c;
    while (base.deg_or(0) >= 1 && base.derivative().is_zero()) base = base.pth_root();
    Poly p_candidate = base;
    if (base.deg_or(0) >= 1) {
        Poly d = base.derivative();
        Poly g = poly_gcd(base, d);
        if (!g.is_one()) p_candidate = (base / g).monic();
    }
    const int dp = p_candidate.deg_or(0);
    if (dp < 1 || n % dp != 0) return 0;
    if (!(p_candidate.pow(static_cast<uint64_t>(n / dp)) == c)) return 0;
    return is_irreducible(p_candidate) ? dp : 0;
}

std::vector<PolyFactor> factorize(const Poly& g) {
    if (g.is_zero()) throw std::invalid_argument("factorize: zero polynomial");
    if (!g.is_monic()) throw std::invalid_argument("factorize: input must be monic");
    std::vector<PolyFactor> out;
    Poly rest = g;
    for (int d = 1; rest.deg_or(0) >= 1 && d <= rest.deg_or(0) / 2; ++d) {
        for (const Poly& p : monic_irreducibles(g.field(), d)) {
            if (rest.deg_or(0) < d) break;
            int e = 0;
            while ((rest % p).is_zero()) {
                rest = rest / p;
                ++e;
            }
            if (e > 0) out.push_back({p, e});
        }
    }
    if (rest.deg_or(0) >= 1) out.push_back({rest, 1});  // leftover is irreducible
    return out;
}

int mobius(const Poly& g) {
    auto f = factorize(g);
    for (const auto& pf : f)
        if (pf.exponent >= 2) return 0;
    return (f.size() % 2 == 0) ? 1 : -1;
}

BigInt euler_phi(const Poly& g) {
    const uint64_t q = g.field()->q();
    BigInt r = 1;
    for (const auto& pf : factorize(g)) {
        BigInt qd = 1;
        for (int i = 0; i < pf.prime.deg_or(0); ++i) qd *= q;
        BigInt full = 1;
        for (int i = 0; i < pf.exponent; ++i) full *= qd;
        r *= full - full / qd;
    }
    return r;
}

BigInt divisor_count(const Poly& g) {
    BigInt r = 1;
    for (const auto& pf : factorize(g)) r *= pf.exponent + 1;
    return r;
}

std::vector<Poly> monic_divisors(const Poly& g) {
    auto f = factorize(g);
    std::vector<Poly> out{Poly::one(g.field())};
    for (const auto& pf : f) {
        std::vector<Poly> next;
        Poly pk = Poly::one(g.field());
        for (int e = 0; e <= pf.exponent; ++e) {
            for (const Poly& d : out) next.push_back(d * pk);
            pk = pk * pf.prime;
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

FieldElement sum_over_roots(const RationalFunction& u, const Poly& c) {
    const FieldDescriptor* f = c.field();
    if (c.is_zero() || !c.is_monic()) throw std::invalid_argument("sum_over_roots: c must be monic");
    const int n = c.deg_or(0);
    if (n == 0) return f->zero();
    if (!u.denominator().is_one() && !poly_gcd(u.denominator(), c).is_one())
        throw std::invalid_argument("sum_over_roots: denominator shares a factor with c");
    Poly m = u.numerator() % c;
    if (!u.denominator().is_one()) m = (m * u.denominator().mod_inverse(c)) % c;
    // trace of the multiplication-by-m operator on F_q[x]/(c)
    FieldElement t = f->zero();
    Poly w = m;
    t = t + w.coeff(0);
    for (int i = 1; i < n; ++i) {
        w = w.shift(1) % c;
        t = t + w.coeff(static_cast<size_t>(i));
    }
    return t;
}

std::vector<FieldElement> inverse_root_power_sums(const Poly& c, int j_max) {
    const FieldDescriptor* f = c.field();
    if (c.is_zero() || c.constant_term().is_zero())
        throw std::invalid_argument("inverse_root_power_sums: c(0) must be nonzero");
    const int l = c.deg_or(0);
    const FieldElement c0inv = f->inv(c.constant_term());
    // e_j = (-1)^j c_j / c_0 are the elementary symmetric functions of the
    // inverse roots; Newton's identities then give the power sums without
    // any division by integers
    std::vector<FieldElement> e(static_cast<size_t>(l) + 1, f->zero());
    for (int j = 1; j <= l; ++j) {
        FieldElement v = c.coeff(static_cast<size_t>(j)) * c0inv;
        e[static_cast<size_t>(j)] = (j % 2 == 0) ? v : -v;
    }
    std::vector<FieldElement> ps(static_cast<size_t>(j_max) + 1, f->zero());
    for (int k = 1; k <= j_max; ++k) {
        FieldElement acc = f->zero();
        for (int i = 1; i < k && i <= l; ++i) {
            FieldElement term = e[static_cast<size_t>(i)] * ps[static_cast<size_t>(k - i)];
            acc = (i % 2 == 1) ? acc + term : acc - term;
        }
        if (k <= l) {
            FieldElement term = e[static_cast<size_t>(k)] * f->from_int(k);
            acc = (k % 2 == 1) ? acc + term : acc - term;
        }
        ps[static_cast<size_t>(k)] = acc;
    }
    return std::vector<FieldElement>(ps.begin() + 1, ps.end());
}

namespace {
std::mutex irr_mutex;
std::map<std::pair<const FieldDescriptor*, int>, std::vector<Poly>>& irr_cache() {
    static std::map<std::pair<const FieldDescriptor*, int>, std::vector<Poly>> c;
    return c;
}
std::map<std::pair<const FieldDescriptor*, int>, std::vector<PrimePower>>& pp_cache() {
    static std::map<std::pair<const FieldDescriptor*, int>, std::vector<PrimePower>> c;
    return c;
}
}  // namespace

void for_each_monic(const FieldDescriptor* f, int deg, const std::function<void(const Poly&)>& fn) {
    if (deg < 0) return;
    uint64_t total = 1;
    for (int i = 0; i < deg; ++i) total *= f->q();
    for (uint64_t idx = 0; idx < total; ++idx) fn(Poly::monic_at(f, deg, idx));
}

const std::vector<Poly>& monic_irreducibles(const FieldDescriptor* f, int deg) {
    {
        std::lock_guard<std::mutex> lock(irr_mutex);
        auto it = irr_cache().find({f, deg});
        if (it != irr_cache().end()) return it->second;
    }
    std::vector<Poly> out;
    if (deg >= 1) {
        // trial division by lower-degree irreducibles
        std::vector<const std::vector<Poly>*> lower;
        for (int d = 1; d <= deg / 2; ++d) lower.push_back(&monic_irreducibles(f, d));
        for_each_monic(f, deg, [&](const Poly& c) {
            for (const auto* tbl : lower)
                for (const Poly& p : *tbl)
                    if ((c % p).is_zero()) return;
            out.push_back(c);
        });
    }
    std::lock_guard<std::mutex> lock(irr_mutex);
    auto [it, fresh] = irr_cache().emplace(std::make_pair(f, deg), std::move(out));
    return it->second;
}

const std::vector<PrimePower>& prime_powers_of_degree(const FieldDescriptor* f, int deg) {
    {
        std::lock_guard<std::mutex> lock(irr_mutex);
        auto it = pp_cache().find({f, deg});
        if (it != pp_cache().end()) return it->second;
    }
    std::vector<PrimePower> out;
    for (int e = 1; e <= deg; ++e) {
        if (deg % e != 0) continue;
        for (const Poly& p : monic_irreducibles(f, e))
            out.push_back({p.pow(static_cast<uint64_t>(deg / e)), e});
    }
    std::lock_guard<std::mutex> lock(irr_mutex);
    auto [it, fresh] = pp_cache().emplace(std::make_pair(f, deg), std::move(out));
    return it->second;
}

}  // namespace aszl
