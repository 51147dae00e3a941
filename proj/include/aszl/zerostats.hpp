#pragma once

#include <complex>
#include <map>

#include "aszl/errors.hpp"
#include "aszl/families.hpp"
#include "aszl/testfn.hpp"
#include "aszl/lattice.hpp"

namespace aszl {

// Normalized zero angles theta_i = arg(rho_i)/2pi in [-1/2, 1/2), sorted,
// with multiplicity; rho_i = q^(-1/2) / lambda_i for the roots lambda_i.
struct ZeroSet {
    std::vector<double> theta;
    double rh_residual = 0.0;  // max | |rho_i| - 1 |
    int count() const { return static_cast<int>(theta.size()); }
};

// Roots via complex companion-matrix eigenvalues plus a Newton polish; a
// backward-error certificate of 1e-12 is enforced. Character-side L-functions
// have their trivial (1 - delta u) factor stripped exactly first.
ZeroSet zeros(const LPoly& lfun);

std::complex<double> trace_from_zeros(const ZeroSet& z, long r);

// W_1 and W_2 with the periodized test function evaluated through its finite
// Fourier series (exact for band-limited shapes); N is the zero count scale.
double w1(const ZeroSet& z, const TestFunction& phi, int scale_n);
double w2(const ZeroSet& z, const TestFunction& phi, int scale_n);
// the same quantities assembled from traces T^r (identical mathematics,
// different summation order; used for cross-checks)
double w1_fourier(const ZeroSet& z, const TestFunction& phi, int scale_n);
double w2_fourier(const ZeroSet& z, const TestFunction& phi, int scale_n);

// Lambda side of the explicit formula:
//   T^r = -q^(-r/2) (delta^r + sum_{deg c = r, monic} Lambda(c) chi(c)),
// delta the character's degree twist (1 for a plain even character).
// Negative r by conjugation; chi must be even.
std::complex<double> trace_from_lambda(const DirichletChar& chi, long r);
CyclotomicInt lambda_weighted_sum(const DirichletChar& chi, int r);  // exact inner sum

// Chebychev psi for a residue subgroup N of the units mod Q
BigInt chebyshev_psi(int r, const ResidueSet& subgroup,
                     uint64_t budget = kDefaultEnumerationCap);
// twisted variant: weights Lambda^a(c) = psi(tr(a * rootsum(c))) Lambda(c)
CyclotomicInt chebyshev_psi_twisted(int r, const ResidueSet& subgroup, const FieldElement& a,
                                    const AdditiveCharacter& psi,
                                    uint64_t budget = kDefaultEnumerationCap);
// tau(r, s; N) with the two branches (rs >= 0 versus rs < 0)
BigInt tau_sum(int r, int s, const ResidueSet& subgroup,
               uint64_t budget = kDefaultEnumerationCap);

// T^r = sum rho_i^r computed exactly from the L-coefficients by Newton's
// identities in Z[zeta_p] (no root finding), embedded at the end; the trivial
// factor of a character-side L is stripped first
std::complex<double> trace_exact(const LPoly& lfun, long r);
// the exact cyclotomic power sum of the inverse roots of L (before the
// q^(-r/2) normalization); r >= 0
CyclotomicInt inverse_root_power_sum_exact(const LPoly& lfun, int r);

// ---- trace means ----

// direct side: averages of the zero-side traces over a family, either from
// computed zero sets or exactly from the L-polynomials
std::complex<double> mean_trace_direct(const std::vector<ZeroSet>& zs, long r);
std::complex<double> mean_trace_product_direct(const std::vector<ZeroSet>& zs, long r, long s);
std::complex<double> mean_trace_direct(const std::vector<LPoly>& ls, long r);
std::complex<double> mean_trace_product_direct(const std::vector<LPoly>& ls, long r, long s);

// formula side, inclusion-exclusion over the period subgroups of H
double mean_trace_formula(const CharGroup& h, int r);
double mean_trace_product_formula(const CharGroup& h, int r, int s);
// ordinary family specialization: H = order-p characters mod g^2, with the
// per-divisor membership taken in the p-th powers mod gQ
double mean_trace_formula_ordinary(const Poly& g, int r);
// linear-twisted analogue for H_g^a; complex in general
std::complex<double> mean_trace_formula_ordinary_twisted(const Poly& g, int r,
                                                         const FieldElement& a,
                                                         const AdditiveCharacter& psi);

// ---- random-matrix references ----

enum class RmtKind { U1Level, U2Level, USp1Level };
double rmt_reference(RmtKind kind, const TestFunction& phi);

// integral of tr(U^r) over USp(n): -1 for even r, 0 for odd r (1 <= r <= n)
int usp_trace_moment(int r, int n);

// #{c monic irreducible of degree r_half : c(x^2) irreducible}
BigInt diagonal_chebotarev_count(int r_half, const FieldDescriptor* f,
                                 uint64_t budget = kDefaultEnumerationCap);

// Table of trace values keyed by (set id, r[, s]) with exactness tags.
class TraceTable {
   public:
    struct Key {
        std::string set_id;
        long r = 0;
        std::optional<long> s;
        bool operator<(const Key& o) const {
            if (set_id != o.set_id) return set_id < o.set_id;
            if (r != o.r) return r < o.r;
            return s < o.s;
        }
    };
    struct Entry {
        std::complex<double> value;
        bool exact = true;
    };

    void set(const Key& k, std::complex<double> v, bool exact = true) { m_[k] = {v, exact}; }
    const Entry* find(const Key& k) const {
        auto it = m_.find(k);
        return it == m_.end() ? nullptr : &it->second;
    }
    const std::map<Key, Entry>& entries() const { return m_; }
    // T^{-r} = conj(T^r) and realness of mean entries, within tol
    void validate(double tol = 1e-10) const;

   private:
    std::map<Key, Entry> m_;
};

}  // namespace aszl
