#include "aszl/characters.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace aszl {

namespace {
std::mutex units_mutex;
std::map<std::pair<const FieldDescriptor*, Poly>, std::unique_ptr<UnitGroup>>& unit_registry() {
    static std::map<std::pair<const FieldDescriptor*, Poly>, std::unique_ptr<UnitGroup>> r;
    return r;
}
std::mutex table_mutex;
}  // namespace

UnitGroup::UnitGroup(const Poly& Q) : q_(Q) {
    const FieldDescriptor* f = Q.field();
    const int m = Q.deg_or(0);
    if (m < 1) throw std::invalid_argument("unit group needs a modulus of degree >= 1");
    uint64_t total = 1;
    for (int i = 0; i < m; ++i) total *= f->q();
    for (uint64_t idx = 0; idx < total; ++idx) {
        std::vector<FieldElement> cs(static_cast<size_t>(m), f->zero());
        uint64_t t = idx;
        for (int j = 0; j < m && t > 0; ++j) {
            cs[static_cast<size_t>(j)] = f->element_at(t % f->q());
            t /= f->q();
        }
        Poly c = Poly::from_coeffs(f, std::move(cs));
        if (c.is_zero()) continue;
        if (!poly_gcd(c, Q).is_one()) continue;
        by_code_.emplace(idx, units_.size());
        if (c.is_one()) one_idx_ = units_.size();
        units_.push_back(std::move(c));
    }
}

uint64_t UnitGroup::code(const Poly& reduced) const {
    const FieldDescriptor* f = q_.field();
    const int m = q_.deg_or(0);
    uint64_t idx = 0;
    for (int j = m; j-- > 0;) idx = idx * f->q() + f->index_of(reduced.coeff(static_cast<size_t>(j)));
    return idx;
}

std::optional<size_t> UnitGroup::index_of_residue(const Poly& c) const {
    Poly r = c % q_;
    auto it = by_code_.find(code(r));
    if (it == by_code_.end()) return std::nullopt;
    return it->second;
}

size_t UnitGroup::mul(size_t a, size_t b) const {
    Poly r = (units_[a] * units_[b]) % q_;
    return by_code_.at(code(r));
}

size_t UnitGroup::pow(size_t a, uint64_t e) const {
    size_t acc = one_idx_, base = a;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

const UnitGroup& units_mod(const Poly& Q) {
    std::lock_guard<std::mutex> lock(units_mutex);
    auto key = std::make_pair(Q.field(), Q);
    auto it = unit_registry().find(key);
    if (it == unit_registry().end())
        it = unit_registry().emplace(key, std::unique_ptr<UnitGroup>(new UnitGroup(Q))).first;
    return *it->second;
}

size_t ResidueSet::count() const {
    size_t n = 0;
    for (char c : member) n += (c != 0);
    return n;
}

bool ResidueSet::contains_poly(const Poly& c) const {
    auto idx = units->index_of_residue(c);
    return idx.has_value() && member[*idx] != 0;
}

std::vector<Poly> ResidueSet::residues() const {
    std::vector<Poly> out;
    for (size_t i = 0; i < member.size(); ++i)
        if (member[i]) out.push_back(units->unit(i));
    return out;
}

DirichletChar DirichletChar::trivial(const Poly& Q, uint32_t zp) {
    DirichletChar c;
    c.kind_ = Kind::Trivial;
    c.q_ = Q;
    c.zp_ = zp;
    c.degree_twist_ = CyclotomicInt::one(zp);
    return c;
}

DirichletChar DirichletChar::from_table(const Poly& Q, uint32_t zp,
                                        std::vector<CyclotomicInt> values) {
    const UnitGroup& u = units_mod(Q);
    if (values.size() != u.size()) throw std::invalid_argument("table size mismatch with unit group");
    DirichletChar c;
    c.kind_ = Kind::Table;
    c.q_ = Q;
    c.zp_ = zp;
    c.degree_twist_ = CyclotomicInt::one(zp);
    c.table_ = std::make_shared<const std::vector<CyclotomicInt>>(std::move(values));
    return c;
}

DirichletChar DirichletChar::with_degree_twist(const CyclotomicInt& delta) const {
    DirichletChar c = *this;
    c.degree_twist_ = degree_twist_ * delta;
    return c;
}

CyclotomicInt DirichletChar::evaluate_raw(const Poly& c) const {
    switch (kind_) {
        case Kind::Trivial: {
            if (c.is_zero() || !poly_gcd(c, q_).is_one()) return CyclotomicInt::zero(zp_);
            return CyclotomicInt::one(zp_);
        }
        case Kind::PolyAS: {
            if (c.constant_term().is_zero()) return CyclotomicInt::zero(zp_);
            const int d = f_poly_.deg_or(0);
            auto ps = inverse_root_power_sums(c, d);
            FieldElement acc = c.field()->zero();
            for (int j = 1; j <= d; ++j) {
                const FieldElement aj = f_poly_.coeff(static_cast<size_t>(j));
                if (!aj.is_zero()) acc = acc + aj * ps[static_cast<size_t>(j - 1)];
            }
            return psi_.tr(acc);
        }
        case Kind::OrdinaryAS: {
            const Poly& g = f_ord_.denominator();
            if (c.is_zero() || !poly_gcd(c, g).is_one()) return CyclotomicInt::zero(zp_);
            // the root multiset ignores the leading unit
            return psi_.tr(sum_over_roots(f_ord_, c.is_monic() ? c : c.monic()));
        }
        case Kind::LinearTwist: {
            if (c.is_zero() || !poly_gcd(c, q_).is_one()) return CyclotomicInt::zero(zp_);
            const FieldDescriptor* f = c.field();
            FieldElement rootsum = f->zero();
            const int l = c.deg_or(0);
            if (l >= 1) rootsum = -(c.coeff(static_cast<size_t>(l - 1)) * f->inv(c.lead()));
            return psi_.tr(twist_a_ * rootsum);
        }
        case Kind::Table: {
            auto idx = units_mod(q_).index_of_residue(c);
            if (!idx) return CyclotomicInt::zero(zp_);
            return (*table_)[*idx];
        }
    }
    throw std::logic_error("unreachable");
}

CyclotomicInt DirichletChar::operator()(const Poly& c) const {
    CyclotomicInt v = evaluate_raw(c);
    if (!degree_twist_.is_one() && !v.is_zero()) {
        const int d = c.deg_or(0);
        for (int i = 0; i < d; ++i) v = v * degree_twist_;
    }
    return v;
}

const std::vector<CyclotomicInt>& DirichletChar::table() const {
    if (kind_ == Kind::LinearTwist)
        throw std::logic_error("chi_{ax} is not periodic modulo Q; no residue table exists");
    std::lock_guard<std::mutex> lock(table_mutex);
    if (!table_) {
        const UnitGroup& u = units_mod(q_);
        std::vector<CyclotomicInt> vals;
        vals.reserve(u.size());
        for (size_t i = 0; i < u.size(); ++i) vals.push_back(evaluate_raw(u.unit(i)));
        table_ = std::make_shared<const std::vector<CyclotomicInt>>(std::move(vals));
    }
    return *table_;
}

DirichletChar DirichletChar::times(const DirichletChar& o) const {
    if (!(q_ == o.q_) || zp_ != o.zp_) throw std::invalid_argument("character product: modulus mismatch");
    const auto& ta = table();
    const auto& tb = o.table();
    std::vector<CyclotomicInt> vals(ta.size(), CyclotomicInt::zero(zp_));
    for (size_t i = 0; i < ta.size(); ++i) vals[i] = ta[i] * tb[i];
    DirichletChar r = from_table(q_, zp_, std::move(vals));
    r.degree_twist_ = degree_twist_ * o.degree_twist_;
    return r;
}

DirichletChar DirichletChar::conj() const {
    const auto& t = table();
    std::vector<CyclotomicInt> vals;
    vals.reserve(t.size());
    for (const auto& v : t) vals.push_back(v.conj_inv());
    DirichletChar r = from_table(q_, zp_, std::move(vals));
    r.degree_twist_ = degree_twist_.conj_inv();
    return r;
}

DirichletChar DirichletChar::induced_to(const Poly& big_q) const {
    if (!(big_q % q_).is_zero()) throw std::invalid_argument("induced_to: old modulus must divide new");
    const UnitGroup& u = units_mod(big_q);
    std::vector<CyclotomicInt> vals;
    vals.reserve(u.size());
    for (size_t i = 0; i < u.size(); ++i) vals.push_back(evaluate_raw(u.unit(i)));
    DirichletChar r = from_table(big_q, zp_, std::move(vals));
    r.degree_twist_ = degree_twist_;
    return r;
}

bool DirichletChar::same_character(const DirichletChar& o) const {
    if (!(q_ == o.q_) || zp_ != o.zp_) return false;
    if (!(degree_twist_ == o.degree_twist_)) return false;
    return table() == o.table();
}

bool DirichletChar::is_trivial() const {
    if (!degree_twist_.is_one()) return false;
    if (kind_ == Kind::LinearTwist) return twist_a_.is_zero();
    for (const auto& v : table())
        if (!v.is_one()) return false;
    return true;
}

int DirichletChar::order() const {
    if (!degree_twist_.is_one()) throw std::logic_error("order(): degree-twisted character");
    const auto& t = table();
    std::vector<CyclotomicInt> acc = t;
    const int cap = static_cast<int>(4 * zp_ * zp_);
    for (int k = 1; k <= cap; ++k) {
        bool triv = true;
        for (const auto& v : acc)
            if (!v.is_one()) {
                triv = false;
                break;
            }
        if (triv) return k;
        for (size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] * t[i];
    }
    throw std::logic_error("character order exceeds cap");
}

bool DirichletChar::is_even() const {
    const FieldDescriptor* f = q_.field();
    const FieldElement gen = f->unit_group_generator();
    return (*this)(Poly::constant(gen)).is_one();
}

bool DirichletChar::has_period(const Poly& q_prime) const {
    if (!(q_ % q_prime).is_zero()) throw std::invalid_argument("has_period: Q' must divide Q");
    const UnitGroup& u = units_mod(q_);
    const auto& t = table();
    std::map<Poly, CyclotomicInt> first;
    for (size_t i = 0; i < u.size(); ++i) {
        Poly r = q_prime.is_constant() ? Poly::zero(q_.field()) : u.unit(i) % q_prime;
        auto it = first.find(r);
        if (it == first.end())
            first.emplace(std::move(r), t[i]);
        else if (!(it->second == t[i]))
            return false;
    }
    return true;
}

bool DirichletChar::is_primitive() const {
    if (q_.deg_or(0) < 1) throw std::invalid_argument("is_primitive: modulus must have degree >= 1");
    for (const auto& pf : factorize(q_)) {
        if (has_period(q_ / pf.prime)) return false;
    }
    return true;
}

DirichletChar chi_poly_mod(const Poly& f, const AdditiveCharacter& psi, int modulus_degree) {
    const FieldDescriptor* fd = f.field();
    const uint32_t p = fd->p();
    if (p < 3) throw std::invalid_argument("chi_poly requires p > 2");
    if (psi.p() != p) throw std::invalid_argument("chi_poly: additive character characteristic mismatch");
    const int d = f.deg_or(0);
    if (f.is_zero() || d < 1) throw std::invalid_argument("chi_poly: f must be nonconstant");
    if (!f.constant_term().is_zero()) throw std::invalid_argument("chi_poly: family requires f(0) = 0");
    for (int i = static_cast<int>(p); i <= d; i += static_cast<int>(p))
        if (!f.coeff(static_cast<size_t>(i)).is_zero())
            throw std::invalid_argument("chi_poly: family requires a_i = 0 whenever p | i");
    if (d % static_cast<int>(p) == 0)
        throw std::invalid_argument("chi_poly: family requires gcd(deg f, p) = 1");
    if (modulus_degree < d + 1) throw std::invalid_argument("chi_poly: modulus degree below deg f + 1");
    DirichletChar c;
    c.kind_ = DirichletChar::Kind::PolyAS;
    c.q_ = Poly::x(fd).pow(static_cast<uint64_t>(modulus_degree));
    c.zp_ = p;
    c.psi_ = psi;
    c.f_poly_ = f;
    c.degree_twist_ = CyclotomicInt::one(p);
    return c;
}

DirichletChar chi_poly(const Poly& f, const AdditiveCharacter& psi) {
    return chi_poly_mod(f, psi, f.deg_or(0) + 1);
}

DirichletChar chi_ord(const RationalFunction& f, const AdditiveCharacter& psi) {
    const Poly& g = f.denominator();
    const Poly& h = f.numerator();
    const FieldDescriptor* fd = g.field();
    if (fd->p() < 3) throw std::invalid_argument("chi_ord requires p > 2");
    if (psi.p() != fd->p()) throw std::invalid_argument("chi_ord: additive character characteristic mismatch");
    if (g.deg_or(0) < 1) throw std::invalid_argument("chi_ord: denominator must be nonconstant");
    if (!is_squarefree(g)) throw std::invalid_argument("chi_ord: denominator must be squarefree");
    if (!(h.degree() < g.degree()))
        throw std::invalid_argument("chi_ord: requires deg h < deg g (shift constants off first)");
    DirichletChar c;
    c.kind_ = DirichletChar::Kind::OrdinaryAS;
    c.q_ = g * g;
    c.zp_ = fd->p();
    c.psi_ = psi;
    c.f_ord_ = f;
    c.degree_twist_ = CyclotomicInt::one(fd->p());
    return c;
}

DirichletChar chi_linear_twist(const FieldElement& a, const Poly& Q, const AdditiveCharacter& psi) {
    const FieldDescriptor* fd = Q.field();
    if (psi.p() != fd->p()) throw std::invalid_argument("chi_linear_twist: characteristic mismatch");
    DirichletChar c;
    c.kind_ = DirichletChar::Kind::LinearTwist;
    c.q_ = Q;
    c.zp_ = fd->p();
    c.psi_ = psi;
    c.twist_a_ = a;
    c.degree_twist_ = CyclotomicInt::one(fd->p());
    return c;
}

bool is_primitive(const DirichletChar& chi) { return chi.is_primitive(); }
int character_order(const DirichletChar& chi) { return chi.order(); }
int parity(const DirichletChar& chi) { return chi.is_even() ? 1 : 0; }

CharGroup::CharGroup(Poly q, std::vector<DirichletChar> members)
    : q_(std::move(q)), members_(std::move(members)) {}

namespace {
std::string table_fingerprint(const DirichletChar& c) {
    std::string s;
    for (const auto& v : c.table()) {
        s += v.to_string();
        s += ';';
    }
    return s;
}
}  // namespace

bool CharGroup::verify_closure() const {
    std::set<std::string> keys;
    for (const auto& m : members_) keys.insert(table_fingerprint(m));
    if (keys.size() != members_.size()) return false;  // duplicates
    for (const auto& a : members_)
        for (const auto& b : members_)
            if (!keys.count(table_fingerprint(a.times(b)))) return false;
    return true;
}

std::vector<DirichletChar> CharGroup::primitive_members() const {
    std::vector<DirichletChar> out;
    for (const auto& m : members_)
        if (m.is_primitive()) out.push_back(m);
    return out;
}

CharGroup CharGroup::period_subgroup(const Poly& q_prime) const {
    std::vector<DirichletChar> out;
    for (const auto& m : members_)
        if (m.has_period(q_prime)) out.push_back(m);
    return CharGroup(q_, std::move(out));
}

ResidueSet CharGroup::orthogonal_set() const {
    const UnitGroup& u = units_mod(q_);
    ResidueSet s;
    s.units = &u;
    s.member.assign(u.size(), 1);
    for (const auto& m : members_) {
        const auto& t = m.table();
        for (size_t i = 0; i < u.size(); ++i)
            if (s.member[i] && !t[i].is_one()) s.member[i] = 0;
    }
    return s;
}

CharGroup group_H_odd(int d, const FieldDescriptor* f, const AdditiveCharacter& psi) {
    const uint32_t p = f->p();
    if (p < 3) throw std::invalid_argument("group_H_odd requires p > 2");
    if (d < 1 || d % 2 == 0 || d % static_cast<int>(p) == 0)
        throw std::invalid_argument("group_H_odd requires gcd(d, 2p) = 1");
    std::vector<int> free_idx;
    for (int i = 1; i <= d; i += 2)
        if (i % static_cast<int>(p) != 0) free_idx.push_back(i);
    const Poly q = Poly::x(f).pow(static_cast<uint64_t>(d + 1));
    std::vector<DirichletChar> members;
    uint64_t total = 1;
    for (size_t i = 0; i < free_idx.size(); ++i) total *= f->q();
    for (uint64_t code = 0; code < total; ++code) {
        std::vector<FieldElement> cs(static_cast<size_t>(d) + 1, f->zero());
        uint64_t t = code;
        for (int i : free_idx) {
            cs[static_cast<size_t>(i)] = f->element_at(t % f->q());
            t /= f->q();
        }
        Poly fx = Poly::from_coeffs(f, std::move(cs));
        if (fx.is_zero())
            members.push_back(DirichletChar::trivial(q, p));
        else
            members.push_back(chi_poly_mod(fx, psi, d + 1));
    }
    CharGroup h(q, std::move(members));
    if (!h.verify_closure()) throw std::logic_error("group_H_odd: member set is not a group");
    return h;
}

ResidueSet pth_power_residues(const Poly& Q) {
    const UnitGroup& u = units_mod(Q);
    const uint32_t p = Q.field()->p();
    ResidueSet s;
    s.units = &u;
    s.member.assign(u.size(), 0);
    for (size_t i = 0; i < u.size(); ++i) s.member[u.pow(i, p)] = 1;
    return s;
}

CharGroup all_order_p_characters(const Poly& Q, const AdditiveCharacter& psi) {
    const UnitGroup& u = units_mod(Q);
    const uint32_t p = Q.field()->p();
    if (psi.p() != p) throw std::invalid_argument("additive character characteristic mismatch");
    ResidueSet pth = pth_power_residues(Q);
    const size_t n = u.size();
    // label every unit with an exponent vector over F_p relative to greedily
    // chosen generators of U/U^p
    std::vector<char> labeled(n, 0);
    std::vector<std::vector<uint32_t>> expvec(n);
    std::vector<size_t> gens;
    for (size_t i = 0; i < n; ++i)
        if (pth.member[i]) labeled[i] = 1;
    for (size_t g = 0; g < n; ++g) {
        if (labeled[g]) continue;
        gens.push_back(g);
        std::vector<size_t> cur;
        for (size_t i = 0; i < n; ++i)
            if (labeled[i]) cur.push_back(i);
        for (uint32_t e = 1; e < p; ++e) {
            const size_t ge = u.pow(g, e);
            for (size_t i : cur) {
                const size_t ni = u.mul(i, ge);
                if (!labeled[ni]) {
                    labeled[ni] = 1;
                    expvec[ni] = expvec[i];
                    expvec[ni].resize(gens.size() - 1, 0);
                    expvec[ni].push_back(e);
                }
            }
        }
    }
    const size_t nu = gens.size();
    uint64_t coset_count = 1;
    for (size_t i = 0; i < nu; ++i) coset_count *= p;
    if (coset_count * pth.count() != n)
        throw std::logic_error("p-th power coset labeling failed to cover the unit group");
    for (size_t i = 0; i < n; ++i) expvec[i].resize(nu, 0);

    std::vector<DirichletChar> members;
    for (uint64_t dual = 0; dual < coset_count; ++dual) {
        std::vector<uint32_t> dv(nu, 0);
        uint64_t t = dual;
        for (size_t j = 0; j < nu; ++j) {
            dv[j] = static_cast<uint32_t>(t % p);
            t /= p;
        }
        std::vector<CyclotomicInt> vals;
        vals.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            int64_t e = 0;
            for (size_t j = 0; j < nu; ++j) e += static_cast<int64_t>(dv[j]) * expvec[i][j];
            vals.push_back(CyclotomicInt::zeta_pow(p, e));
        }
        members.push_back(DirichletChar::from_table(Q, p, std::move(vals)));
    }
    return CharGroup(Q, std::move(members));
}

}  // namespace aszl
