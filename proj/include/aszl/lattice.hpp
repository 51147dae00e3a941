#pragma once

#include "aszl/arith.hpp"
#include "aszl/errors.hpp"

namespace aszl {

using PolyVec = std::vector<Poly>;

// deg v = max component degree (minus-infinity marker for the zero vector)
Degree vector_degree(const PolyVec& v);

// exact determinant by cofactor expansion (ranks here are tiny)
Poly poly_mat_det(const std::vector<PolyVec>& rows);

// Row reduction to weak Popov form: distinct pivot positions, where the pivot
// of a row is the rightmost position of maximal degree. Rectangular input is
// allowed; zero rows are dropped. The same transformation is applied to
// *transform when given (for unimodularity checks).
std::vector<PolyVec> weak_popov_rows(std::vector<PolyVec> rows,
                                     std::vector<PolyVec>* transform = nullptr);

// Full-rank F_q[x]-lattice given by basis rows.
class FqxLattice {
   public:
    explicit FqxLattice(std::vector<PolyVec> basis_rows);

    int rank() const { return static_cast<int>(basis_.size()); }
    const FieldDescriptor* field() const { return basis_[0][0].field(); }
    const std::vector<PolyVec>& basis() const { return basis_; }
    int volume_exponent() const { return vol_exp_; }  // deg det
    bool is_reduced() const { return reduced_; }

    // reduced basis of the same lattice; records the unimodular change of
    // basis (reduced = transform * original)
    FqxLattice reduced() const;
    const std::vector<PolyVec>& reduction_transform() const;

    // exact membership test (Cramer with exact divisions)
    bool contains(const PolyVec& v) const;
    // coefficients c with v = sum c_i b_i, if v is in the lattice
    std::optional<PolyVec> coordinates(const PolyVec& v) const;

   private:
    std::vector<PolyVec> basis_;
    int vol_exp_ = 0;
    bool reduced_ = false;
    std::vector<PolyVec> transform_;  // set on the value returned by reduced()
};

enum class CountConstraint { All, NonZero, Primitive };

inline constexpr uint64_t kDefaultEnumerationCap = 10'000'000;

// exact number of v in L with deg v <= s under the constraint; primitivity
// means the coordinate gcd is a nonzero constant (primitive in the lattice)
BigInt count_short(const FqxLattice& lat, int s, CountConstraint constraint,
                   uint64_t budget = kDefaultEnumerationCap);

// rank-2 per-coordinate variant: deg v_1 <= r and deg v_2 <= s
BigInt count_short_per_coordinate(const FqxLattice& lat, int r, int s, bool primitive,
                                  uint64_t budget = kDefaultEnumerationCap);

// {(g,h) : h = a g (mod Q)} with basis rows (1,a), (0,Q); requires gcd(a,Q)=1
FqxLattice congruence_lattice(const Poly& a, const Poly& Q);

// nonzero (g,h) with deg g <= r, deg h <= s, h = a g (mod Q), found by exact
// kernel computation; requires r + s >= deg Q - 1
std::pair<Poly, Poly> small_solution(const Poly& a, const Poly& Q, int r, int s);

// ---- lattices over R = F_q[x^p] ----

// deg_R of v in V = R + xR + ... + x^(p-2)R; throws if v has an x^(p-1+jp)
// component (then v is not a derivative)
Degree r_degree(const Poly& v, uint32_t p);

// Lambda_Q = Q F_q[x] ^ V as an R-lattice of rank p-1.
class RLattice {
   public:
    const Poly& q_poly() const { return q_; }
    uint32_t p() const { return p_; }
    // basis rows over R = F_q[y], y standing for x^p; p-1 columns
    const std::vector<PolyVec>& basis_rows() const { return rows_; }
    int volume_exponent() const { return vol_exp_; }  // deg_y det
    // the x-polynomial represented by an R-row
    Poly row_to_x_poly(const PolyVec& row) const;

   private:
    friend RLattice lambdaQ_basis(const Poly& Q);
    Poly q_;
    uint32_t p_ = 0;
    std::vector<PolyVec> rows_;
    int vol_exp_ = 0;
};

// reduced R-basis of Lambda_Q (Q squarefree), via bounded-degree linear
// algebra over F_q followed by row reduction over R
RLattice lambdaQ_basis(const Poly& Q);

// #{v in Lambda_Q : deg_x v <= r-1}, exact
BigInt lambdaQ_count_short(const RLattice& lat, int r, uint64_t budget = kDefaultEnumerationCap);

}  // namespace aszl
