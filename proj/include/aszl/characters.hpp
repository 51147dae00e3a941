#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "aszl/arith.hpp"

namespace aszl {

// Materialized unit group (F_q[x]/Q)^x with residue indexing. Interned per
// modulus; initialize-once, then shared read-only.
class UnitGroup {
   public:
    const Poly& modulus() const { return q_; }
    const FieldDescriptor* field() const { return q_.field(); }
    size_t size() const { return units_.size(); }
    const Poly& unit(size_t idx) const { return units_[idx]; }
    // reduces c mod Q; nullopt when gcd(c, Q) != 1
    std::optional<size_t> index_of_residue(const Poly& c) const;
    size_t mul(size_t a, size_t b) const;
    size_t pow(size_t a, uint64_t e) const;
    size_t one_index() const { return one_idx_; }

   private:
    friend const UnitGroup& units_mod(const Poly& Q);
    explicit UnitGroup(const Poly& Q);
    Poly q_;
    std::vector<Poly> units_;
    std::unordered_map<uint64_t, size_t> by_code_;
    size_t one_idx_ = 0;
    uint64_t code(const Poly& reduced) const;
};

const UnitGroup& units_mod(const Poly& Q);

// subset of the units mod Q with O(1) membership
struct ResidueSet {
    const UnitGroup* units = nullptr;
    std::vector<char> member;  // indexed by unit index

    size_t count() const;
    bool contains_index(size_t idx) const { return member[idx] != 0; }
    // reduces c mod Q; false when not coprime to Q
    bool contains_poly(const Poly& c) const;
    std::vector<Poly> residues() const;
};

// Dirichlet character modulo Q, extended to F_q[x] by zero off the units.
// Backends: the explicit A-S constructions (polynomial and ordinary
// families), the linear twist chi_{ax}, an explicit table, and the trivial
// character. An optional degree twist multiplies values by delta^(deg c);
// it is what the constant shift of an ordinary member contributes.
class DirichletChar {
   public:
    enum class Kind { Trivial, PolyAS, OrdinaryAS, LinearTwist, Table };

    static DirichletChar trivial(const Poly& Q, uint32_t zeta_order_p);
    static DirichletChar from_table(const Poly& Q, uint32_t zeta_order_p,
                                    std::vector<CyclotomicInt> values_on_units);

    Kind kind() const { return kind_; }
    const Poly& modulus() const { return q_; }
    const FieldDescriptor* field() const { return q_.field(); }
    uint32_t zeta_p() const { return zp_; }
    const CyclotomicInt& degree_twist() const { return degree_twist_; }
    DirichletChar with_degree_twist(const CyclotomicInt& delta) const;

    // strongly multiplicative evaluation on any polynomial
    CyclotomicInt operator()(const Poly& c) const;

    // table access on units mod Q (lazy; requires a twist-free character)
    const std::vector<CyclotomicInt>& table() const;
    CyclotomicInt value_on_unit(size_t idx) const { return table()[idx]; }

    DirichletChar times(const DirichletChar& o) const;
    DirichletChar conj() const;
    DirichletChar induced_to(const Poly& big_q) const;
    bool same_character(const DirichletChar& o) const;

    bool is_trivial() const;
    int order() const;          // least k >= 1 with chi^k trivial
    bool is_even() const;       // trivial on F_q^x
    bool is_primitive() const;  // no proper period
    bool has_period(const Poly& q_prime) const;

   private:
    DirichletChar() = default;
    friend DirichletChar chi_poly_mod(const Poly&, const AdditiveCharacter&, int);
    friend DirichletChar chi_ord(const RationalFunction&, const AdditiveCharacter&);
    friend DirichletChar chi_linear_twist(const FieldElement&, const Poly&, const AdditiveCharacter&);

    CyclotomicInt evaluate_raw(const Poly& c) const;  // without the degree twist

    Kind kind_ = Kind::Trivial;
    Poly q_;
    uint32_t zp_ = 3;
    AdditiveCharacter psi_;
    Poly f_poly_;                // PolyAS
    RationalFunction f_ord_;     // OrdinaryAS
    FieldElement twist_a_;       // LinearTwist
    CyclotomicInt degree_twist_;
    mutable std::shared_ptr<const std::vector<CyclotomicInt>> table_;
};

// chi_f for f in F_d: primitive character modulo
// x^(d+1) of order p, evaluated through inverse-root power sums.
DirichletChar chi_poly(const Poly& f, const AdditiveCharacter& psi);
// same evaluation, declared modulo x^m for m >= deg f + 1
DirichletChar chi_poly_mod(const Poly& f, const AdditiveCharacter& psi, int modulus_degree);

// chi_f for f = h/g with deg h < deg g, g monic squarefree: character modulo
// g^2, evaluated through root sums (note: roots, not inverse roots).
DirichletChar chi_ord(const RationalFunction& f, const AdditiveCharacter& psi);

// chi_{ax}: values psi(tr(a * sum of roots of c)); the root sum is read off
// the second-highest coefficient
DirichletChar chi_linear_twist(const FieldElement& a, const Poly& Q, const AdditiveCharacter& psi);

// spec-level wrappers
bool is_primitive(const DirichletChar& chi);
int character_order(const DirichletChar& chi);
int parity(const DirichletChar& chi);  // e(chi): 1 if even, 0 if odd

class CharGroup {
   public:
    CharGroup(Poly q, std::vector<DirichletChar> members);
    const Poly& modulus() const { return q_; }
    const std::vector<DirichletChar>& members() const { return members_; }
    size_t size() const { return members_.size(); }
    bool verify_closure() const;  // closed under pointwise products
    std::vector<DirichletChar> primitive_members() const;
    CharGroup period_subgroup(const Poly& q_prime) const;
    ResidueSet orthogonal_set() const;  // B^perp inside the units mod Q

   private:
    Poly q_;
    std::vector<DirichletChar> members_;
};

// H = {chi_f : f odd polynomial of degree <= d obeying the family
// constraints} together with the trivial character;
// requires gcd(d, 2p) = 1
CharGroup group_H_odd(int d, const FieldDescriptor* f, const AdditiveCharacter& psi);

// all characters of (F_q[x]/Q)^x of order dividing p, built generically from
// the p-th power cosets of the unit group (independent of the chi_f maps)
CharGroup all_order_p_characters(const Poly& Q, const AdditiveCharacter& psi);

// image of the p-th power map on the units mod Q
ResidueSet pth_power_residues(const Poly& Q);

}  // namespace aszl
