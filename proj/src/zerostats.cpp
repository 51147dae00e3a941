#include "aszl/zerostats.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace aszl {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kBackwardErrorTol = 1e-12;

std::complex<double> eval_poly(const std::vector<std::complex<double>>& c,
                               std::complex<double> u) {
    std::complex<double> acc(0.0, 0.0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * u + c[i];
    return acc;
}

std::complex<double> eval_deriv(const std::vector<std::complex<double>>& c,
                                std::complex<double> u) {
    std::complex<double> acc(0.0, 0.0);
    for (size_t i = c.size(); i-- > 1;) acc = acc * u + static_cast<double>(i) * c[i];
    return acc;
}
}  // namespace

ZeroSet zeros(const LPoly& lfun) {
    LPoly work = lfun;
    if (lfun.side == LPoly::Side::Character && lfun.trivial_factor)
        work = lfun.strip_trivial_factor();
    const int n = work.degree();
    ZeroSet out;
    if (n <= 0) return out;
    std::vector<std::complex<double>> c;
    c.reserve(work.coeff.size());
    for (const auto& ck : work.coeff) c.push_back(ck.embed());
    // companion matrix of the monic normalization
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) m(i, n - 1) = -c[static_cast<size_t>(i)] / c[static_cast<size_t>(n)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    if (solver.info() != Eigen::Success)
        throw NumericCertificationError("zeros: eigenvalue solver failed to converge");

    std::vector<std::complex<double>> roots;
    for (int i = 0; i < n; ++i) {
        std::complex<double> lambda = solver.eigenvalues()(i);
        for (int it = 0; it < 12; ++it) {  // Newton polish
            const std::complex<double> d = eval_deriv(c, lambda);
            if (std::abs(d) < 1e-14) break;
            const std::complex<double> step = eval_poly(c, lambda) / d;
            lambda -= step;
            if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(lambda))) break;
        }
        roots.push_back(lambda);
    }
    // merge clusters: a multiple root scatters its eigenvalues symmetrically,
    // so the cluster centroid restores full accuracy
    std::vector<int> group(roots.size(), -1);
    int ngroups = 0;
    for (size_t i = 0; i < roots.size(); ++i) {
        if (group[i] >= 0) continue;
        group[i] = ngroups++;
        for (size_t j = i + 1; j < roots.size(); ++j)
            if (group[j] < 0 && std::abs(roots[i] - roots[j]) < 1e-6) group[j] = group[i];
    }
    std::vector<std::complex<double>> centroid(static_cast<size_t>(ngroups), {0.0, 0.0});
    std::vector<int> mult(static_cast<size_t>(ngroups), 0);
    for (size_t i = 0; i < roots.size(); ++i) {
        centroid[static_cast<size_t>(group[i])] += roots[i];
        mult[static_cast<size_t>(group[i])] += 1;
    }
    const double q = static_cast<double>(work.field->q());
    const double sqrt_q = std::sqrt(q);
    std::vector<std::complex<double>> rhos;
    for (int gidx = 0; gidx < ngroups; ++gidx) {
        std::complex<double> lambda =
            centroid[static_cast<size_t>(gidx)] / static_cast<double>(mult[static_cast<size_t>(gidx)]);
        if (mult[static_cast<size_t>(gidx)] > 1) {
            // a root of multiplicity m is a simple root of the (m-1)-th
            // derivative; Newton there recovers full precision
            std::vector<std::complex<double>> g = c;
            for (int dcount = 1; dcount < mult[static_cast<size_t>(gidx)]; ++dcount) {
                std::vector<std::complex<double>> next(g.size() - 1);
                for (size_t k = 1; k < g.size(); ++k) next[k - 1] = static_cast<double>(k) * g[k];
                g = std::move(next);
            }
            for (int it = 0; it < 20; ++it) {
                const std::complex<double> d = eval_deriv(g, lambda);
                if (std::abs(d) < 1e-14) break;
                const std::complex<double> step = eval_poly(g, lambda) / d;
                lambda -= step;
                if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(lambda))) break;
            }
        }
        double scale = 0.0, upow = 1.0;
        for (size_t k = 0; k < c.size(); ++k) {
            scale += std::abs(c[k]) * upow;
            upow *= std::abs(lambda);
        }
        const double backward = std::abs(eval_poly(c, lambda)) / std::max(scale, 1e-300);
        if (backward > kBackwardErrorTol)
            throw NumericCertificationError("zeros: backward error certificate failed");
        for (int cnt = 0; cnt < mult[static_cast<size_t>(gidx)]; ++cnt)
            rhos.push_back(1.0 / (sqrt_q * lambda));
    }
    // certify the whole multiset against the exact cyclotomic power sums
    for (int r = 1; r <= std::min(3, n); ++r) {
        std::complex<double> got(0.0, 0.0);
        for (const auto& rho : rhos) got += std::pow(rho, r);
        const std::complex<double> expect =
            inverse_root_power_sum_exact(work, r).embed() * std::pow(q, -r / 2.0);
        if (std::abs(got - expect) > 1e-9 * (1.0 + std::abs(expect)))
            throw NumericCertificationError("zeros: power-sum certificate failed");
    }
    for (const auto& rho : rhos) {
        double theta = std::atan2(rho.imag(), rho.real()) / (2.0 * kPi);
        theta -= std::floor(theta + 0.5);  // canonical representative in [-1/2, 1/2)
        out.theta.push_back(theta);
        out.rh_residual = std::max(out.rh_residual, std::abs(std::abs(rho) - 1.0));
    }
    std::sort(out.theta.begin(), out.theta.end());
    return out;
}

std::complex<double> trace_from_zeros(const ZeroSet& z, long r) {
    std::complex<double> acc(0.0, 0.0);
    for (double t : z.theta) {
        const double ang = 2.0 * kPi * static_cast<double>(r) * t;
        acc += std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc;
}

namespace {
// phi_N(t) = (1/N) sum_{|r| <= beta N} hat(r/N) e^(2 pi i r t), real by symmetry
double sampling_function(const TestFunction& phi, int n, double t) {
    const int cap = static_cast<int>(std::floor(phi.support() * n + 1e-9));
    double acc = phi.hat(0.0);
    for (int r = 1; r <= cap; ++r)
        acc += 2.0 * phi.hat(static_cast<double>(r) / n) * std::cos(2.0 * kPi * r * t);
    return acc / n;
}
}  // namespace

double w1(const ZeroSet& z, const TestFunction& phi, int scale_n) {
    if (scale_n <= 0) throw std::invalid_argument("w1: the zero-count scale must be positive");
    double acc = 0.0;
    for (double t : z.theta) acc += sampling_function(phi, scale_n, t);
    return acc;
}

double w2(const ZeroSet& z, const TestFunction& phi, int scale_n) {
    if (scale_n <= 0) throw std::invalid_argument("w2: the zero-count scale must be positive");
    double s1 = 0.0, s2 = 0.0;
    for (double t : z.theta) {
        const double v = sampling_function(phi, scale_n, t);
        s1 += v;
        s2 += v * v;
    }
    return s1 * s1 - s2;  // ordered pairs i != j, index-level semantics
}

double w1_fourier(const ZeroSet& z, const TestFunction& phi, int scale_n) {
    const int cap = static_cast<int>(std::floor(phi.support() * scale_n + 1e-9));
    std::complex<double> acc = phi.hat(0.0) * trace_from_zeros(z, 0);
    for (int r = 1; r <= cap; ++r) {
        const double h = phi.hat(static_cast<double>(r) / scale_n);
        acc += h * (trace_from_zeros(z, r) + trace_from_zeros(z, -r));
    }
    return acc.real() / scale_n;
}

double w2_fourier(const ZeroSet& z, const TestFunction& phi, int scale_n) {
    const int cap = static_cast<int>(std::floor(phi.support() * scale_n + 1e-9));
    std::vector<std::complex<double>> tr(4 * static_cast<size_t>(cap) + 1);
    for (int r = -2 * cap; r <= 2 * cap; ++r)
        tr[static_cast<size_t>(r + 2 * cap)] = trace_from_zeros(z, r);
    auto t_at = [&](int r) { return tr[static_cast<size_t>(r + 2 * cap)]; };
    std::complex<double> acc(0.0, 0.0);
    for (int r = -cap; r <= cap; ++r) {
        const double hr = phi.hat(static_cast<double>(r) / scale_n);
        if (hr == 0.0) continue;
        for (int s = -cap; s <= cap; ++s) {
            const double hs = phi.hat(static_cast<double>(s) / scale_n);
            if (hs == 0.0) continue;
            acc += hr * hs * (t_at(r) * t_at(s) - t_at(r + s));
        }
    }
    return acc.real() / (static_cast<double>(scale_n) * scale_n);
}

CyclotomicInt lambda_weighted_sum(const DirichletChar& chi, int r) {
    CyclotomicInt acc = CyclotomicInt::zero(chi.zeta_p());
    for (const auto& pp : prime_powers_of_degree(chi.field(), r))
        acc = acc + chi(pp.value).scaled(pp.lambda);
    return acc;
}

std::complex<double> trace_from_lambda(const DirichletChar& chi, long r) {
    if (!chi.is_even())
        throw std::invalid_argument(
            "trace_from_lambda: the m-2 trace convention covers even characters only");
    if (r == 0) return static_cast<double>(chi.modulus().deg_or(0) - 2);
    if (r < 0) return std::conj(trace_from_lambda(chi, -r));
    CyclotomicInt delta_pow = CyclotomicInt::one(chi.zeta_p());
    for (long i = 0; i < r; ++i) delta_pow = delta_pow * chi.degree_twist();
    const CyclotomicInt inner = delta_pow + lambda_weighted_sum(chi, static_cast<int>(r));
    const double qr = std::pow(static_cast<double>(chi.field()->q()), -static_cast<double>(r) / 2.0);
    return -qr * inner.embed();
}

BigInt chebyshev_psi(int r, const ResidueSet& subgroup, uint64_t budget) {
    if (r < 1) return 0;
    const FieldDescriptor* f = subgroup.units->field();
    uint64_t monics = 1;
    for (int i = 0; i < r; ++i) {
        monics *= f->q();
        if (monics > budget) throw BudgetExceeded("chebyshev_psi: enumeration budget exceeded");
    }
    BigInt acc = 0;
    for (const auto& pp : prime_powers_of_degree(f, r))
        if (subgroup.contains_poly(pp.value)) acc += pp.lambda;
    return acc;
}

CyclotomicInt chebyshev_psi_twisted(int r, const ResidueSet& subgroup, const FieldElement& a,
                                    const AdditiveCharacter& psi, uint64_t budget) {
    const FieldDescriptor* f = subgroup.units->field();
    CyclotomicInt acc = CyclotomicInt::zero(psi.p());
    if (r < 1) return acc;
    uint64_t monics = 1;
    for (int i = 0; i < r; ++i) {
        monics *= f->q();
        if (monics > budget)
            throw BudgetExceeded("chebyshev_psi_twisted: enumeration budget exceeded");
    }
    for (const auto& pp : prime_powers_of_degree(f, r)) {
        if (!subgroup.contains_poly(pp.value)) continue;
        // Lambda^a(c) = psi(tr(a * sum of roots of c)) Lambda(c); the root sum
        // is minus the second-highest coefficient of the monic c
        const int dc = pp.value.deg_or(0);
        const FieldElement rootsum = -pp.value.coeff(static_cast<size_t>(dc - 1));
        acc = acc + psi.tr(a * rootsum).scaled(pp.lambda);
    }
    return acc;
}

BigInt tau_sum(int r, int s, const ResidueSet& subgroup, uint64_t budget) {
    if (r == 0 || s == 0) return 0;
    const FieldDescriptor* f = subgroup.units->field();
    const Poly& q = subgroup.units->modulus();
    const int ar = std::abs(r), as = std::abs(s);
    uint64_t monics = 1;
    for (int i = 0; i < ar + as; ++i) {
        monics *= f->q();
        if (monics > budget) throw BudgetExceeded("tau_sum: enumeration budget exceeded");
    }
    const auto& hs = prime_powers_of_degree(f, ar);
    const auto& gs = prime_powers_of_degree(f, as);
    BigInt acc = 0;
    if ((r >= 0) == (s >= 0)) {
        for (const auto& hp : hs)
            for (const auto& gp : gs)
                if (subgroup.contains_poly(hp.value * gp.value))
                    acc += BigInt(hp.lambda) * gp.lambda;
    } else {
        for (const auto& gp : gs) {
            if (!poly_gcd(gp.value, q).is_one()) continue;
            const Poly ginv = gp.value.mod_inverse(q);
            for (const auto& hp : hs) {
                if (!poly_gcd(hp.value, q).is_one()) continue;
                if (subgroup.contains_poly(hp.value * ginv))
                    acc += BigInt(hp.lambda) * gp.lambda;
            }
        }
    }
    return acc;
}

CyclotomicInt inverse_root_power_sum_exact(const LPoly& lfun, int r) {
    // L = prod (1 - a_i u) with a_i = sqrt(q) rho_i; c_j = (-1)^j e_j(a)
    LPoly work = lfun;
    if (lfun.side == LPoly::Side::Character && lfun.trivial_factor)
        work = lfun.strip_trivial_factor();
    const uint32_t p = work.coeff[0].p();
    const int n = work.degree();
    if (r < 0) throw std::invalid_argument("inverse_root_power_sum_exact: r >= 0");
    if (r == 0) return CyclotomicInt::from_int(p, n);
    std::vector<CyclotomicInt> e(static_cast<size_t>(n) + 1, CyclotomicInt::zero(p));
    for (int j = 1; j <= n; ++j) {
        const CyclotomicInt& cj = work.coeff[static_cast<size_t>(j)];
        e[static_cast<size_t>(j)] = (j % 2 == 0) ? cj : -cj;
    }
    std::vector<CyclotomicInt> ps(static_cast<size_t>(r) + 1, CyclotomicInt::zero(p));
    for (int k = 1; k <= r; ++k) {
        CyclotomicInt acc = CyclotomicInt::zero(p);
        for (int i = 1; i < k && i <= n; ++i) {
            const CyclotomicInt term = e[static_cast<size_t>(i)] * ps[static_cast<size_t>(k - i)];
            acc = (i % 2 == 1) ? acc + term : acc - term;
        }
        if (k <= n) {
            const CyclotomicInt term = e[static_cast<size_t>(k)].scaled(k);
            acc = (k % 2 == 1) ? acc + term : acc - term;
        }
        ps[static_cast<size_t>(k)] = acc;
    }
    return ps[static_cast<size_t>(r)];
}

std::complex<double> trace_exact(const LPoly& lfun, long r) {
    if (r < 0) return std::conj(trace_exact(lfun, -r));
    const CyclotomicInt ps = inverse_root_power_sum_exact(lfun, static_cast<int>(r));
    const double q = static_cast<double>(lfun.field->q());
    return ps.embed() * std::pow(q, -static_cast<double>(r) / 2.0);
}

std::complex<double> mean_trace_direct(const std::vector<LPoly>& ls, long r) {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& l : ls) acc += trace_exact(l, r);
    return acc / static_cast<double>(ls.size());
}

std::complex<double> mean_trace_product_direct(const std::vector<LPoly>& ls, long r, long s) {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& l : ls) acc += trace_exact(l, r) * trace_exact(l, s);
    return acc / static_cast<double>(ls.size());
}

std::complex<double> mean_trace_direct(const std::vector<ZeroSet>& zs, long r) {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& z : zs) acc += trace_from_zeros(z, r);
    return acc / static_cast<double>(zs.size());
}

std::complex<double> mean_trace_product_direct(const std::vector<ZeroSet>& zs, long r, long s) {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& z : zs) acc += trace_from_zeros(z, r) * trace_from_zeros(z, s);
    return acc / static_cast<double>(zs.size());
}

namespace {
struct PeriodTerm {
    int mu;
    double weight;      // #H_{Q'} / #H^pr
    ResidueSet orth;    // H_{Q'}^perp inside the units mod Q
};

std::vector<PeriodTerm> inclusion_exclusion_terms(const CharGroup& h) {
    const size_t nprim = h.primitive_members().size();
    if (nprim == 0) throw std::invalid_argument("inclusion-exclusion needs primitive characters");
    std::vector<PeriodTerm> terms;
    for (const Poly& qp : monic_divisors(h.modulus())) {
        const int mu = mobius(h.modulus() / qp);
        if (mu == 0) continue;
        CharGroup sub = h.period_subgroup(qp);
        terms.push_back(PeriodTerm{mu,
                                   static_cast<double>(sub.size()) / static_cast<double>(nprim),
                                   sub.orthogonal_set()});
    }
    return terms;
}
}  // namespace

double mean_trace_formula(const CharGroup& h, int r) {
    const int ar = std::abs(r);
    if (ar == 0) return static_cast<double>(h.modulus().deg_or(0) - 2);
    const double q = static_cast<double>(h.modulus().field()->q());
    double acc = 1.0;
    for (const auto& t : inclusion_exclusion_terms(h))
        acc += t.mu * t.weight * static_cast<double>(chebyshev_psi(ar, t.orth));
    return -std::pow(q, -ar / 2.0) * acc;
}

double mean_trace_product_formula(const CharGroup& h, int r, int s) {
    if (r == 0 || s == 0) throw std::invalid_argument("mean_trace_product_formula: r, s nonzero");
    if (r < 0) {  // M^{r,s} = M^{-r,-s}
        r = -r;
        s = -s;
    }
    const int ar = std::abs(r), as = std::abs(s);
    const double q = static_cast<double>(h.modulus().field()->q());
    const double mr = mean_trace_formula(h, ar);
    const double ms = mean_trace_formula(h, as);
    // leading sign: expanding <(1+A)(1+B)> with <A> = -q^{r/2} M^r - 1 gives
    // -q^{-(|r|+|s|)/2}, confirmed by the brute-force unit tests
    double acc = -1.0;
    double tau_part = 0.0;
    for (const auto& t : inclusion_exclusion_terms(h))
        tau_part += t.mu * t.weight * static_cast<double>(tau_sum(r, s, t.orth));
    acc += tau_part;
    return std::pow(q, -(ar + as) / 2.0) * acc - std::pow(q, -as / 2.0) * mr -
           std::pow(q, -ar / 2.0) * ms;
}

double mean_trace_formula_ordinary(const Poly& g, int r) {
    if (r < 1) throw std::invalid_argument("mean_trace_formula_ordinary: r >= 1");
    const FieldDescriptor* f = g.field();
    const double q = static_cast<double>(f->q());
    const double phi_g = static_cast<double>(euler_phi(g));
    double acc = 1.0;
    for (const Poly& qp : monic_divisors(g)) {
        const int mu = mobius(g / qp);
        if (mu == 0) continue;
        ResidueSet pth = pth_power_residues(g * qp);
        acc += mu * (std::pow(q, qp.deg_or(0)) / phi_g) *
               static_cast<double>(chebyshev_psi(r, pth));
    }
    return -std::pow(q, -r / 2.0) * acc;
}

std::complex<double> mean_trace_formula_ordinary_twisted(const Poly& g, int r,
                                                         const FieldElement& a,
                                                         const AdditiveCharacter& psi) {
    if (r < 1) throw std::invalid_argument("mean_trace_formula_ordinary_twisted: r >= 1");
    if (a.is_zero())
        return std::complex<double>(mean_trace_formula_ordinary(g, r), 0.0);
    const FieldDescriptor* f = g.field();
    const double q = static_cast<double>(f->q());
    const double phi_g = static_cast<double>(euler_phi(g));
    // members f0 + ax have a pole at infinity, so L(u, chi) = L(u, f, psi)
    // carries no trivial zero and the explicit formula has no constant term
    std::complex<double> acc(0.0, 0.0);
    for (const Poly& qp : monic_divisors(g)) {
        const int mu = mobius(g / qp);
        if (mu == 0) continue;
        ResidueSet pth = pth_power_residues(g * qp);
        acc += static_cast<double>(mu) * (std::pow(q, qp.deg_or(0)) / phi_g) *
               chebyshev_psi_twisted(r, pth, a, psi).embed();
    }
    return -std::pow(q, -r / 2.0) * acc;
}

double rmt_reference(RmtKind kind, const TestFunction& phi) {
    if (phi.support() >= 10)
        throw std::invalid_argument("rmt_reference: support parameter out of range");
    switch (kind) {
        case RmtKind::U1Level:
            return phi.hat(0.0);
        case RmtKind::USp1Level:
            return phi.hat(0.0) - 0.5 * phi.integral_hat(1.0);
        case RmtKind::U2Level:
            return phi.hat(0.0) * phi.hat(0.0) - phi.integral_hat_sq_bartlett();
    }
    throw std::invalid_argument("rmt_reference: unsupported kind");
}

int usp_trace_moment(int r, int n) {
    if (r < 1 || r > n) throw std::invalid_argument("usp_trace_moment: requires 1 <= r <= n");
    return (r % 2 == 0) ? -1 : 0;
}

BigInt diagonal_chebotarev_count(int r_half, const FieldDescriptor* f, uint64_t budget) {
    if (r_half < 1) throw std::invalid_argument("diagonal_chebotarev_count: r_half >= 1");
    uint64_t monics = 1;
    for (int i = 0; i < r_half; ++i) {
        monics *= f->q();
        if (monics > budget)
            throw BudgetExceeded("diagonal_chebotarev_count: enumeration budget exceeded");
    }
    BigInt count = 0;
    for (const Poly& c : monic_irreducibles(f, r_half)) {
        Poly cx2(f);
        for (int j = 0; j <= c.deg_or(0); ++j)
            cx2 = cx2 + Poly::constant(c.coeff(static_cast<size_t>(j))).shift(2 * j);
        if (is_irreducible(cx2)) ++count;
    }
    return count;
}

void TraceTable::validate(double tol) const {
    for (const auto& [key, entry] : m_) {
        Key neg = key;
        neg.r = -key.r;
        if (key.s) neg.s = -*key.s;
        auto it = m_.find(neg);
        if (it != m_.end()) {
            const auto conj = std::conj(it->second.value);
            if (std::abs(conj - entry.value) > tol)
                throw NumericCertificationError("trace table: T^{-r} != conj(T^r) beyond tolerance");
        }
        if (key.set_id.rfind("mean:", 0) == 0 && std::abs(entry.value.imag()) > tol)
            throw NumericCertificationError("trace table: mean entry has imaginary part beyond tolerance");
    }
}

}  // namespace aszl
