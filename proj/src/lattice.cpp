#include "aszl/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace aszl {

Degree vector_degree(const PolyVec& v) {
    Degree d = Degree::neg_inf();
    for (const auto& c : v)
        if (c.degree() > d) d = c.degree();
    return d;
}

Poly poly_mat_det(const std::vector<PolyVec>& rows) {
    const size_t n = rows.size();
    if (n == 0) throw std::invalid_argument("determinant of empty matrix");
    const FieldDescriptor* f = rows[0][0].field();
    if (n == 1) return rows[0][0];
    Poly det = Poly::zero(f);
    for (size_t j = 0; j < n; ++j) {
        if (rows[0][j].is_zero()) continue;
        std::vector<PolyVec> minor;
        minor.reserve(n - 1);
        for (size_t i = 1; i < n; ++i) {
            PolyVec row;
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(rows[i][k]);
            minor.push_back(std::move(row));
        }
        Poly term = rows[0][j] * poly_mat_det(minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

namespace {

// rightmost position of maximal degree; row must be nonzero
size_t pivot_position(const PolyVec& row) {
    Degree best = Degree::neg_inf();
    size_t pos = 0;
    for (size_t j = 0; j < row.size(); ++j) {
        if (!row[j].is_zero() && row[j].degree() >= best) {
            best = row[j].degree();
            pos = j;
        }
    }
    return pos;
}

bool row_is_zero(const PolyVec& row) {
    for (const auto& c : row)
        if (!c.is_zero()) return false;
    return true;
}

}  // namespace

std::vector<PolyVec> weak_popov_rows(std::vector<PolyVec> rows, std::vector<PolyVec>* transform) {
    if (rows.empty()) return rows;
    const FieldDescriptor* f = rows[0][0].field();
    const size_t ncols = rows[0].size();
    for (;;) {
        // locate a pivot collision among nonzero rows
        std::vector<int> owner(ncols, -1);
        int ra = -1, rb = -1;
        for (size_t i = 0; i < rows.size() && ra < 0; ++i) {
            if (row_is_zero(rows[i])) continue;
            const size_t pv = pivot_position(rows[i]);
            if (owner[pv] < 0) {
                owner[pv] = static_cast<int>(i);
            } else {
                ra = owner[pv];
                rb = static_cast<int>(i);
            }
        }
        if (ra < 0) break;
        // reduce the row of larger degree by the other; ties keep the lower index
        size_t hi = static_cast<size_t>(rb), lo = static_cast<size_t>(ra);
        const size_t pv = pivot_position(rows[lo]);
        if (rows[hi][pv].degree() < rows[lo][pv].degree()) std::swap(hi, lo);
        const int shift = rows[hi][pv].degree().value() - rows[lo][pv].degree().value();
        const FieldElement factor = rows[hi][pv].lead() * f->inv(rows[lo][pv].lead());
        const Poly mult = Poly::constant(factor).shift(shift);
        for (size_t k = 0; k < ncols; ++k) rows[hi][k] = rows[hi][k] - mult * rows[lo][k];
        if (transform)
            for (size_t k = 0; k < (*transform)[0].size(); ++k)
                (*transform)[hi][k] = (*transform)[hi][k] - mult * (*transform)[lo][k];
    }
    std::vector<PolyVec> out;
    for (auto& r : rows)
        if (!row_is_zero(r)) out.push_back(std::move(r));
    return out;
}

FqxLattice::FqxLattice(std::vector<PolyVec> basis_rows) : basis_(std::move(basis_rows)) {
    if (basis_.empty()) throw std::invalid_argument("lattice needs at least one basis vector");
    for (const auto& r : basis_)
        if (r.size() != basis_.size())
            throw std::invalid_argument("lattice basis must be a square matrix");
    Poly det = poly_mat_det(basis_);
    if (det.is_zero()) throw std::invalid_argument("lattice basis is singular");
    vol_exp_ = det.deg_or(0);
    std::vector<int> owner(basis_.size(), -1);
    reduced_ = true;
    for (size_t i = 0; i < basis_.size(); ++i) {
        const size_t pv = pivot_position(basis_[i]);
        if (owner[pv] >= 0) reduced_ = false;
        owner[pv] = static_cast<int>(i);
    }
}

FqxLattice FqxLattice::reduced() const {
    const FieldDescriptor* f = field();
    std::vector<PolyVec> u(basis_.size());
    for (size_t i = 0; i < basis_.size(); ++i) {
        u[i].assign(basis_.size(), Poly::zero(f));
        u[i][i] = Poly::one(f);
    }
    std::vector<PolyVec> rows = weak_popov_rows(basis_, &u);
    if (rows.size() != basis_.size())
        throw std::logic_error("reduction dropped a row of a nonsingular basis");
    FqxLattice out(rows);
    out.reduced_ = true;
    out.transform_ = std::move(u);
    return out;
}

const std::vector<PolyVec>& FqxLattice::reduction_transform() const {
    if (transform_.empty()) throw std::logic_error("no reduction transform recorded");
    return transform_;
}

std::optional<PolyVec> FqxLattice::coordinates(const PolyVec& v) const {
    if (v.size() != basis_.size()) throw std::invalid_argument("dimension mismatch");
    const Poly det = poly_mat_det(basis_);
    PolyVec out;
    for (size_t i = 0; i < basis_.size(); ++i) {
        std::vector<PolyVec> replaced = basis_;
        replaced[i] = v;
        auto [q, r] = poly_mat_det(replaced).divmod(det);
        if (!r.is_zero()) return std::nullopt;
        out.push_back(std::move(q));
    }
    return out;
}

bool FqxLattice::contains(const PolyVec& v) const { return coordinates(v).has_value(); }

namespace {

// coefficient polynomials of degree <= bound, enumerated by index
Poly poly_from_index(const FieldDescriptor* f, int bound, uint64_t idx) {
    if (bound < 0) return Poly::zero(f);
    std::vector<FieldElement> cs(static_cast<size_t>(bound) + 1, f->zero());
    for (int j = 0; j <= bound && idx > 0; ++j) {
        cs[static_cast<size_t>(j)] = f->element_at(idx % f->q());
        idx /= f->q();
    }
    return Poly::from_coeffs(f, std::move(cs));
}

bool coords_primitive(const PolyVec& coords) {
    Poly g = Poly::zero(coords[0].field());
    for (const auto& c : coords) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : poly_gcd(g, c);
        if (g.is_constant()) return true;
    }
    return !g.is_zero() && g.is_constant();
}

}  // namespace

BigInt count_short(const FqxLattice& lat, int s, CountConstraint constraint, uint64_t budget) {
    FqxLattice red = lat.is_reduced() ? lat : lat.reduced();
    const FieldDescriptor* f = red.field();
    const int n = red.rank();
    std::vector<int> bounds;
    BigInt all = 1;
    for (int i = 0; i < n; ++i) {
        const int mi = vector_degree(red.basis()[static_cast<size_t>(i)]).value();
        const int bi = s - mi;  // deg c_i <= bi (negative: c_i = 0)
        bounds.push_back(bi);
        BigInt cnt = 1;
        for (int e = 0; e <= bi; ++e) cnt *= f->q();
        all *= cnt;
    }
    if (constraint == CountConstraint::All) return all;
    if (constraint == CountConstraint::NonZero) return all - 1;
    if (all > budget) throw BudgetExceeded("count_short: enumeration budget exceeded");
    // Primitive: enumerate coordinate tuples and test the coordinate gcd
    BigInt count = 0;
    std::vector<uint64_t> sizes;
    for (int b : bounds) {
        uint64_t c = 1;
        for (int e = 0; e <= b; ++e) c *= f->q();
        sizes.push_back(c);
    }
    uint64_t total = static_cast<uint64_t>(all);
    PolyVec coords(static_cast<size_t>(n), Poly::zero(f));
    for (uint64_t t = 0; t < total; ++t) {
        uint64_t rem = t;
        for (int i = 0; i < n; ++i) {
            coords[static_cast<size_t>(i)] = poly_from_index(f, bounds[static_cast<size_t>(i)],
                                                             rem % sizes[static_cast<size_t>(i)]);
            rem /= sizes[static_cast<size_t>(i)];
        }
        if (coords_primitive(coords)) ++count;
    }
    return count;
}

BigInt count_short_per_coordinate(const FqxLattice& lat, int r, int s, bool primitive,
                                  uint64_t budget) {
    if (lat.rank() != 2) throw std::invalid_argument("per-coordinate counts are rank-2 only");
    FqxLattice red = lat.is_reduced() ? lat : lat.reduced();
    const FieldDescriptor* f = red.field();
    const int cap = std::max(r, s);
    std::vector<int> bounds;
    std::vector<uint64_t> sizes;
    uint64_t total = 1;
    for (int i = 0; i < 2; ++i) {
        const int mi = vector_degree(red.basis()[static_cast<size_t>(i)]).value();
        const int bi = cap - mi;
        bounds.push_back(bi);
        uint64_t c = 1;
        for (int e = 0; e <= bi; ++e) {
            c *= f->q();
            if (c > budget) throw BudgetExceeded("count_short_per_coordinate: budget exceeded");
        }
        sizes.push_back(c);
        total *= c;
        if (total > budget) throw BudgetExceeded("count_short_per_coordinate: budget exceeded");
    }
    BigInt count = 0;
    PolyVec coords(2, Poly::zero(f));
    for (uint64_t t = 0; t < total; ++t) {
        coords[0] = poly_from_index(f, bounds[0], t % sizes[0]);
        coords[1] = poly_from_index(f, bounds[1], t / sizes[0]);
        PolyVec v{coords[0] * red.basis()[0][0] + coords[1] * red.basis()[1][0],
                  coords[0] * red.basis()[0][1] + coords[1] * red.basis()[1][1]};
        if (!(v[0].degree() <= r) || !(v[1].degree() <= s)) continue;
        if (primitive && !coords_primitive(coords)) continue;
        ++count;
    }
    return count;
}

FqxLattice congruence_lattice(const Poly& a, const Poly& Q) {
    if (Q.is_zero()) throw std::invalid_argument("congruence_lattice: Q must be nonzero");
    if (!poly_gcd(a, Q).is_one()) throw std::invalid_argument("congruence_lattice: gcd(a, Q) != 1");
    const FieldDescriptor* f = Q.field();
    return FqxLattice({{Poly::one(f), a}, {Poly::zero(f), Q}});
}

namespace {

// reduced row echelon form over F_q in place; returns pivot column of each row
std::vector<int> rref(std::vector<std::vector<FieldElement>>& m, const FieldDescriptor* f) {
    std::vector<int> pivots;
    const size_t nrows = m.size();
    if (nrows == 0) return pivots;
    const size_t ncols = m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < nrows; ++col) {
        size_t sel = row;
        while (sel < nrows && m[sel][col].is_zero()) ++sel;
        if (sel == nrows) continue;
        std::swap(m[sel], m[row]);
        const FieldElement inv = f->inv(m[row][col]);
        for (size_t j = col; j < ncols; ++j) m[row][j] = m[row][j] * inv;
        for (size_t i = 0; i < nrows; ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            const FieldElement fac = m[i][col];
            for (size_t j = col; j < ncols; ++j) m[i][j] = m[i][j] - fac * m[row][j];
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    return pivots;
}

// nullspace basis vectors (one per free column, deterministic order)
std::vector<std::vector<FieldElement>> nullspace(std::vector<std::vector<FieldElement>> m,
                                                 size_t ncols, const FieldDescriptor* f) {
    std::vector<int> pivots = rref(m, f);
    std::vector<char> is_pivot(ncols, 0);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = 1;
    std::vector<std::vector<FieldElement>> basis;
    for (size_t free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<FieldElement> v(ncols, f->zero());
        v[free_col] = f->one();
        for (size_t i = 0; i < pivots.size(); ++i)
            v[static_cast<size_t>(pivots[i])] = -m[i][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

std::pair<Poly, Poly> small_solution(const Poly& a, const Poly& Q, int r, int s) {
    const FieldDescriptor* f = Q.field();
    const int m = Q.deg_or(0);
    if (r < 0 || s < 0) throw std::invalid_argument("small_solution: r, s must be >= 0");
    if (r + s < m - 1)
        throw std::invalid_argument("small_solution: requires r + s >= deg Q - 1");
    // linear map (g, h) -> h - a g mod Q on coefficient space
    const size_t ncols = static_cast<size_t>(r + 1 + s + 1);
    std::vector<std::vector<FieldElement>> mat(static_cast<size_t>(m),
                                               std::vector<FieldElement>(ncols, f->zero()));
    for (int j = 0; j <= r; ++j) {
        Poly img = (-(a * Poly::x(f).pow(static_cast<uint64_t>(j)))) % Q;
        for (int i = 0; i < m; ++i) mat[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            img.coeff(static_cast<size_t>(i));
    }
    for (int j = 0; j <= s; ++j) {
        Poly img = Poly::x(f).pow(static_cast<uint64_t>(j)) % Q;
        for (int i = 0; i < m; ++i)
            mat[static_cast<size_t>(i)][static_cast<size_t>(r + 1 + j)] =
                img.coeff(static_cast<size_t>(i));
    }
    auto basis = nullspace(std::move(mat), ncols, f);
    if (basis.empty()) throw std::logic_error("small_solution: kernel unexpectedly trivial");
    const auto& v = basis.front();
    std::vector<FieldElement> gc(v.begin(), v.begin() + r + 1);
    std::vector<FieldElement> hc(v.begin() + r + 1, v.end());
    Poly g = Poly::from_coeffs(f, std::move(gc));
    Poly h = Poly::from_coeffs(f, std::move(hc));
    if (!((h - a * g) % Q).is_zero()) throw std::logic_error("small_solution: verification failed");
    return {g, h};
}

Degree r_degree(const Poly& v, uint32_t p) {
    Degree d = Degree::neg_inf();
    for (int e = 0; e <= v.deg_or(-1); ++e) {
        if (v.coeff(static_cast<size_t>(e)).is_zero()) continue;
        if (e % static_cast<int>(p) == static_cast<int>(p) - 1)
            throw std::invalid_argument("r_degree: polynomial has an x^(p-1) component, not in V");
        const Degree dy = Degree::of(e / static_cast<int>(p));
        if (dy > d) d = dy;
    }
    return d;
}

Poly RLattice::row_to_x_poly(const PolyVec& row) const {
    const FieldDescriptor* f = q_.field();
    Poly out(f);
    for (size_t i = 0; i < row.size(); ++i) {
        for (int j = 0; j <= row[i].deg_or(-1); ++j) {
            const FieldElement c = row[i].coeff(static_cast<size_t>(j));
            if (c.is_zero()) continue;
            out = out + Poly::constant(c).shift(static_cast<int>(p_) * j + static_cast<int>(i));
        }
    }
    return out;
}

RLattice lambdaQ_basis(const Poly& q_in) {
    const FieldDescriptor* f = q_in.field();
    const uint32_t p = f->p();
    if (q_in.is_zero()) throw std::invalid_argument("lambdaQ_basis: Q must be nonzero");
    Poly Q = q_in.is_monic() ? q_in : q_in.monic();
    if (Q.deg_or(0) >= 1 && !is_squarefree(Q))
        throw std::invalid_argument("lambdaQ_basis: Q must be squarefree");
    RLattice out;
    out.q_ = Q;
    out.p_ = p;
    const int dq = Q.deg_or(0);
    if (dq == 0) {
        // Lambda_Q = V
        out.rows_.assign(p - 1, PolyVec(p - 1, Poly::zero(f)));
        for (uint32_t i = 0; i + 1 < p; ++i) out.rows_[i][i] = Poly::one(f);
        out.vol_exp_ = 0;
        return out;
    }
    // window provably containing an R-generating set: every reduced basis row
    // has deg_R <= deg Q, hence x-degree <= p deg Q + p - 2
    const int window = std::max(2 * dq + 2 * static_cast<int>(p),
                                static_cast<int>(p) * dq + static_cast<int>(p) - 2);
    const int dw = window - dq;  // deg w bound for Qw in the window
    // conditions: coefficients of x^(p-1+jp) of Q*w vanish
    std::vector<int> cond_exponents;
    for (int e = static_cast<int>(p) - 1; e <= window; e += static_cast<int>(p))
        cond_exponents.push_back(e);
    std::vector<std::vector<FieldElement>> mat(
        cond_exponents.size(), std::vector<FieldElement>(static_cast<size_t>(dw) + 1, f->zero()));
    for (int j = 0; j <= dw; ++j) {
        Poly img = Q.shift(j);
        for (size_t ci = 0; ci < cond_exponents.size(); ++ci)
            mat[ci][static_cast<size_t>(j)] = img.coeff(static_cast<size_t>(cond_exponents[ci]));
    }
    auto ker = nullspace(std::move(mat), static_cast<size_t>(dw) + 1, f);
    std::vector<PolyVec> rows;
    for (const auto& wvec : ker) {
        Poly w = Poly::from_coeffs(f, wvec);
        Poly v = Q * w;
        // decompose v = sum a_i(x^p) x^i
        PolyVec row(p - 1, Poly::zero(f));
        std::vector<std::vector<FieldElement>> acc(p - 1);
        for (int e = 0; e <= v.deg_or(-1); ++e) {
            const uint32_t i = static_cast<uint32_t>(e) % p;
            if (i == p - 1 && !v.coeff(static_cast<size_t>(e)).is_zero())
                throw std::logic_error("lambdaQ_basis: kernel vector escaped V");
            if (i == p - 1) continue;
            auto& a = acc[i];
            const size_t yj = static_cast<size_t>(e) / p;
            if (a.size() <= yj) a.resize(yj + 1, f->zero());
            a[yj] = v.coeff(static_cast<size_t>(e));
        }
        for (uint32_t i = 0; i + 1 < p; ++i) row[i] = Poly::from_coeffs(f, acc[i]);
        rows.push_back(std::move(row));
    }
    rows = weak_popov_rows(std::move(rows));
    if (rows.size() != p - 1)
        throw std::logic_error("lambdaQ_basis: reduction did not yield rank p-1");
    int vol = 0;
    for (const auto& r : rows) vol += vector_degree(r).value();
    if (vol != dq) throw std::logic_error("lambdaQ_basis: volume exponent mismatch with deg Q");
    out.rows_ = std::move(rows);
    out.vol_exp_ = vol;
    return out;
}

BigInt lambdaQ_count_short(const RLattice& lat, int r, uint64_t budget) {
    const FieldDescriptor* f = lat.q_poly().field();
    const uint32_t p = lat.p();
    if (r < 1) return 1;  // only the zero vector
    const int s_r = (r - 1) / static_cast<int>(p);
    std::vector<int> bounds;
    std::vector<uint64_t> sizes;
    uint64_t total = 1;
    for (const auto& row : lat.basis_rows()) {
        const int bi = s_r - vector_degree(row).value();
        bounds.push_back(bi);
        uint64_t c = 1;
        for (int e = 0; e <= bi; ++e) {
            c *= f->q();
            if (c > budget) throw BudgetExceeded("lambdaQ_count_short: budget exceeded");
        }
        sizes.push_back(c);
        total *= c;
        if (total > budget) throw BudgetExceeded("lambdaQ_count_short: budget exceeded");
    }
    BigInt count = 0;
    const size_t n = lat.basis_rows().size();
    for (uint64_t t = 0; t < total; ++t) {
        uint64_t rem = t;
        PolyVec acc(n, Poly::zero(f));
        for (size_t i = 0; i < n; ++i) {
            Poly ci = poly_from_index(f, bounds[i], rem % sizes[i]);
            rem /= sizes[i];
            if (ci.is_zero()) continue;
            for (size_t k = 0; k < n; ++k) acc[k] = acc[k] + ci * lat.basis_rows()[i][k];
        }
        if (lat.row_to_x_poly(acc).deg_or(r - 1) <= r - 1) ++count;
    }
    return count;
}

}  // namespace aszl
