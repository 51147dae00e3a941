#include "aszl/field.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace aszl {

namespace {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// dense polynomials over F_p, little-endian coefficients
using FpPoly = std::vector<uint32_t>;

void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int fp_deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p;
    }
    fp_trim(c);
    return c;
}

uint32_t fp_inv_scalar(uint32_t a, uint32_t p) {
    // extended Euclid on integers
    int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        int64_t qq = r / nr;
        std::swap(t -= qq * nt, nt);
        std::swap(r -= qq * nr, nr);
    }
    if (r != 1) throw std::domain_error("fp_inv_scalar: not invertible");
    return static_cast<uint32_t>((t % p + p) % p);
}

// a mod m (m nonzero)
FpPoly fp_mod(FpPoly a, const FpPoly& m, uint32_t p) {
    fp_trim(a);
    const int dm = fp_deg(m);
    const uint32_t lcinv = fp_inv_scalar(m.back(), p);
    while (fp_deg(a) >= dm) {
        const int da = fp_deg(a);
        const uint64_t f = static_cast<uint64_t>(a.back()) * lcinv % p;
        for (int j = 0; j <= dm; ++j) {
            uint64_t sub = f * m[j] % p;
            a[da - dm + j] = static_cast<uint32_t>((a[da - dm + j] + p - sub) % p);
        }
        fp_trim(a);
    }
    return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, uint32_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        const uint32_t s = fp_inv_scalar(a.back(), p);
        for (auto& x : a) x = static_cast<uint32_t>(static_cast<uint64_t>(x) * s % p);
    }
    return a;
}

FpPoly fp_powmod_x(uint64_t e, const FpPoly& m, uint32_t p) {
    // x^e mod m by square and multiply
    FpPoly base = fp_mod(FpPoly{0, 1}, m, p);
    FpPoly acc{1};
    while (e > 0) {
        if (e & 1) acc = fp_mod(fp_mul(acc, base, p), m, p);
        base = fp_mod(fp_mul(base, base, p), m, p);
        e >>= 1;
    }
    return acc;
}

FpPoly fp_powmod(FpPoly b, uint64_t e, const FpPoly& m, uint32_t p) {
    FpPoly base = fp_mod(std::move(b), m, p);
    FpPoly acc{1};
    while (e > 0) {
        if (e & 1) acc = fp_mod(fp_mul(acc, base, p), m, p);
        base = fp_mod(fp_mul(base, base, p), m, p);
        e >>= 1;
    }
    return acc;
}

uint64_t ipow(uint64_t b, uint32_t e) {
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Rabin irreducibility test over F_p
bool fp_irreducible(const FpPoly& f, uint32_t p) {
    const int n = fp_deg(f);
    if (n < 1) return false;
    // x^(p^n) == x (mod f)
    FpPoly xq = fp_powmod_x(ipow(p, static_cast<uint32_t>(n)), f, p);
    FpPoly x = fp_mod(FpPoly{0, 1}, f, p);
    if (xq != x) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool lprime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) lprime = false;
        if (!lprime) continue;
        FpPoly xe = fp_powmod_x(ipow(p, static_cast<uint32_t>(n / l)), f, p);
        // gcd(x^(p^(n/l)) - x, f) must be 1
        FpPoly diff = xe;
        diff.resize(std::max<size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        fp_trim(diff);
        FpPoly g = fp_gcd(diff, f, p);
        if (fp_deg(g) != 0) return false;
    }
    return true;
}

FpPoly least_irreducible(uint32_t p, uint32_t k) {
    if (k == 1) return FpPoly{0, 1};  // x
    const uint64_t total = ipow(p, k);
    for (uint64_t idx = 0; idx < total; ++idx) {
        // lexicographic by (a_0, a_1, ...): a_0 is the most significant digit
        FpPoly f(k + 1, 0);
        f[k] = 1;
        uint64_t t = idx;
        for (uint32_t j = 0; j < k; ++j) {
            f[k - 1 - j] = static_cast<uint32_t>(t % p);
            t /= p;
        }
        if (fp_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

std::mutex registry_mutex;
std::map<std::tuple<uint32_t, uint32_t, std::vector<uint32_t>>, const FieldDescriptor*>& registry() {
    static std::map<std::tuple<uint32_t, uint32_t, std::vector<uint32_t>>, const FieldDescriptor*> r;
    return r;
}

}  // namespace

FieldDescriptor::FieldDescriptor(uint32_t p, uint32_t k, std::vector<uint32_t> modulus)
    : p_(p), k_(k), q_(ipow(p, k)), modulus_(std::move(modulus)) {}

bool FieldElement::is_zero() const {
    for (uint32_t x : c)
        if (x != 0) return false;
    return true;
}

FieldElement FieldDescriptor::zero() const { return FieldElement{this, std::vector<uint32_t>(k_, 0)}; }

FieldElement FieldDescriptor::one() const {
    FieldElement e = zero();
    e.c[0] = 1;
    return e;
}

FieldElement FieldDescriptor::from_int(int64_t n) const {
    FieldElement e = zero();
    int64_t m = n % static_cast<int64_t>(p_);
    if (m < 0) m += p_;
    e.c[0] = static_cast<uint32_t>(m);
    return e;
}

FieldElement FieldDescriptor::element_at(uint64_t index) const {
    FieldElement e = zero();
    for (uint32_t j = 0; j < k_ && index > 0; ++j) {
        e.c[j] = static_cast<uint32_t>(index % p_);
        index /= p_;
    }
    return e;
}

uint64_t FieldDescriptor::index_of(const FieldElement& a) const {
    uint64_t idx = 0;
    for (uint32_t j = k_; j-- > 0;) idx = idx * p_ + a.c[j];
    return idx;
}

FieldElement FieldDescriptor::gen() const {
    FieldElement e = zero();
    if (k_ == 1)
        e.c[0] = 0;  // x == 0 in F_p[x]/(x)
    else
        e.c[1] = 1;
    return e;
}

FieldElement FieldDescriptor::add(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = zero();
    for (uint32_t j = 0; j < k_; ++j) r.c[j] = (a.c[j] + b.c[j]) % p_;
    return r;
}

FieldElement FieldDescriptor::sub(const FieldElement& a, const FieldElement& b) const {
    FieldElement r = zero();
    for (uint32_t j = 0; j < k_; ++j) r.c[j] = (a.c[j] + p_ - b.c[j]) % p_;
    return r;
}

FieldElement FieldDescriptor::neg(const FieldElement& a) const {
    FieldElement r = zero();
    for (uint32_t j = 0; j < k_; ++j) r.c[j] = (p_ - a.c[j]) % p_;
    return r;
}

FieldElement FieldDescriptor::mul(const FieldElement& a, const FieldElement& b) const {
    std::vector<uint32_t> c(2 * k_ - 1, 0);
    for (uint32_t i = 0; i < k_; ++i) {
        if (a.c[i] == 0) continue;
        for (uint32_t j = 0; j < k_; ++j)
            c[i + j] = static_cast<uint32_t>((c[i + j] + static_cast<uint64_t>(a.c[i]) * b.c[j]) % p_);
    }
    // reduce by the monic modulus
    for (uint32_t d = 2 * k_ - 2; d >= k_ && d < c.size(); --d) {
        const uint64_t top = c[d];
        if (top == 0) continue;
        c[d] = 0;
        for (uint32_t j = 0; j < k_; ++j)
            c[d - k_ + j] = static_cast<uint32_t>((c[d - k_ + j] + p_ * p_ - top * modulus_[j] % p_) % p_);
    }
    FieldElement r = zero();
    for (uint32_t j = 0; j < k_; ++j) r.c[j] = c[j];
    return r;
}

FieldElement FieldDescriptor::inv(const FieldElement& a) const {
    if (a.is_zero()) throw std::domain_error("division by zero in F_q");
    FpPoly apoly(a.c.begin(), a.c.end());
    fp_trim(apoly);
    // extended Euclid: s*apoly + t*modulus = gcd
    FpPoly r0 = modulus_, r1 = apoly;
    FpPoly s0{}, s1{1};
    while (!r1.empty()) {
        // r0 = q*r1 + r2
        FpPoly r2 = r0, qpoly{};
        const uint32_t lcinv = fp_inv_scalar(r1.back(), p_);
        while (fp_deg(r2) >= fp_deg(r1)) {
            const int shift = fp_deg(r2) - fp_deg(r1);
            const uint64_t f = static_cast<uint64_t>(r2.back()) * lcinv % p_;
            if (static_cast<int>(qpoly.size()) <= shift) qpoly.resize(shift + 1, 0);
            qpoly[shift] = static_cast<uint32_t>((qpoly[shift] + f) % p_);
            for (int j = 0; j <= fp_deg(r1); ++j) {
                uint64_t sub = f * r1[j] % p_;
                r2[shift + j] = static_cast<uint32_t>((r2[shift + j] + p_ - sub) % p_);
            }
            fp_trim(r2);
        }
        FpPoly s2 = s0;  // s2 = s0 - q*s1
        FpPoly qs = fp_mul(qpoly, s1, p_);
        s2.resize(std::max(s2.size(), qs.size()), 0);
        for (size_t j = 0; j < qs.size(); ++j) s2[j] = (s2[j] + p_ - qs[j]) % p_;
        fp_trim(s2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd (a nonzero constant since modulus is irreducible)
    if (fp_deg(r0) != 0) throw std::domain_error("inv: gcd not constant (modulus not irreducible?)");
    const uint32_t scale = fp_inv_scalar(r0[0], p_);
    FieldElement out = zero();
    for (size_t j = 0; j < s0.size() && j < k_; ++j)
        out.c[j] = static_cast<uint32_t>(static_cast<uint64_t>(s0[j]) * scale % p_);
    return out;
}

FieldElement FieldDescriptor::pow(const FieldElement& a, uint64_t e) const {
    FieldElement acc = one(), base = a;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

FieldElement FieldDescriptor::frobenius(const FieldElement& a) const { return pow(a, p_); }

FieldElement FieldDescriptor::unit_group_generator() const {
    const uint64_t cached = unit_gen_index_.load(std::memory_order_acquire);
    if (cached != 0) return element_at(cached);
    const uint64_t n = q_ - 1;
    for (uint64_t idx = 1; idx < q_; ++idx) {
        FieldElement g = element_at(idx);
        if (g.is_zero()) continue;
        bool generates = true;
        // order of g divides n; g generates iff g^(n/l) != 1 for every prime l | n
        uint64_t m = n;
        for (uint64_t l = 2; l * l <= m; ++l) {
            if (m % l) continue;
            while (m % l == 0) m /= l;
            if (pow(g, n / l) == one()) {
                generates = false;
                break;
            }
        }
        if (generates && m > 1 && pow(g, n / m) == one()) generates = false;
        if (generates) {
            unit_gen_index_.store(idx, std::memory_order_release);
            return g;
        }
    }
    throw std::logic_error("no generator found");  // unreachable for a field
}

std::string FieldDescriptor::to_string(const FieldElement& a) const {
    if (k_ == 1) return std::to_string(a.c[0]);
    std::string s = "(";
    for (uint32_t j = 0; j < k_; ++j) {
        if (j) s += ",";
        s += std::to_string(a.c[j]);
    }
    return s + ")";
}

const FieldDescriptor* make_field(uint32_t p, uint32_t k) {
    if (!is_prime_u32(p)) throw std::invalid_argument("make_field: p must be prime");
    if (k < 1) throw std::invalid_argument("make_field: k must be >= 1");
    {
        std::lock_guard<std::mutex> lock(registry_mutex);
        auto it = registry().find({p, k, {}});
        if (it != registry().end()) return it->second;
    }
    FpPoly mod = least_irreducible(p, k);
    auto* desc = new FieldDescriptor(p, k, mod);
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto [it, fresh] = registry().emplace(std::make_tuple(p, k, std::vector<uint32_t>{}), desc);
    if (!fresh) delete desc;
    return it->second;
}

const FieldDescriptor* make_field_with_modulus(uint32_t p, const std::vector<uint32_t>& modulus) {
    if (!is_prime_u32(p)) throw std::invalid_argument("make_field: p must be prime");
    FpPoly m = modulus;
    fp_trim(m);
    if (fp_deg(m) < 1 || m.back() != 1) throw std::invalid_argument("modulus must be monic of degree >= 1");
    if (!fp_irreducible(m, p)) throw std::invalid_argument("modulus must be irreducible over F_p");
    const uint32_t k = static_cast<uint32_t>(fp_deg(m));
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto it = registry().find({p, k, m});
    if (it != registry().end()) return it->second;
    auto* desc = new FieldDescriptor(p, k, m);
    registry().emplace(std::make_tuple(p, k, m), desc);
    return desc;
}

namespace {
std::mutex ext_mutex;
std::map<std::pair<const FieldDescriptor*, uint32_t>, ExtensionHandle>& ext_registry() {
    static std::map<std::pair<const FieldDescriptor*, uint32_t>, ExtensionHandle> r;
    return r;
}
}  // namespace

const ExtensionHandle& extension_field(const FieldDescriptor* fq, uint32_t r) {
    if (r < 1) throw std::invalid_argument("extension_field: r must be >= 1");
    {
        std::lock_guard<std::mutex> lock(ext_mutex);
        auto it = ext_registry().find({fq, r});
        if (it != ext_registry().end()) return it->second;
    }
    const FieldDescriptor* big = make_field(fq->p(), fq->k() * r);
    // image of F_q's generator: deterministic root search of fq's modulus in `big`
    FieldElement root = big->zero();
    if (fq->k() == 1) {
        root = big->zero();  // modulus is x; its root is 0
    } else {
        const auto& m = fq->modulus_poly();
        bool found = false;
        for (uint64_t idx = 0; idx < big->q(); ++idx) {
            FieldElement cand = big->element_at(idx);
            // Horner evaluation of m at cand (m has F_p coefficients)
            FieldElement acc = big->zero();
            for (size_t j = m.size(); j-- > 0;) {
                acc = big->mul(acc, cand);
                acc = big->add(acc, big->from_int(m[j]));
            }
            if (acc.is_zero()) {
                root = cand;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("no root of subfield modulus in extension");
    }
    std::lock_guard<std::mutex> lock(ext_mutex);
    auto [it, fresh] = ext_registry().emplace(std::make_pair(fq, r), ExtensionHandle{big, root});
    return it->second;
}

FieldElement embed(const FieldElement& a, const ExtensionHandle& ext) {
    const FieldDescriptor* big = ext.big;
    FieldElement acc = big->zero();
    for (size_t j = a.c.size(); j-- > 0;) {
        acc = big->mul(acc, ext.q_gen_image);
        acc = big->add(acc, big->from_int(a.c[j]));
    }
    return acc;
}

FieldElement trace_to_prime(const FieldElement& a) {
    const FieldDescriptor* f = a.field;
    FieldElement acc = a, term = a;
    for (uint32_t i = 1; i < f->k(); ++i) {
        term = f->frobenius(term);
        acc = f->add(acc, term);
    }
    for (uint32_t j = 1; j < f->k(); ++j)
        if (acc.c[j] != 0) throw std::logic_error("trace not in prime field");
    const FieldDescriptor* fp = make_field(f->p(), 1);
    FieldElement out = fp->zero();
    out.c[0] = acc.c[0];
    return out;
}

uint32_t trace_to_prime_int(const FieldElement& a) { return trace_to_prime(a).c[0]; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) { return a.field->add(a, b); }
FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a.field->sub(a, b); }
FieldElement operator*(const FieldElement& a, const FieldElement& b) { return a.field->mul(a, b); }
FieldElement operator-(const FieldElement& a) { return a.field->neg(a); }

}  // namespace aszl
