#include "afl3/matrix.hpp"

#include <algorithm>

namespace afl3 {

MatrixF MatrixF::identity(const PrecisionContext& ctx, int n) {
    MatrixF m = zero(ctx, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = QuadExtScalar::one(ctx);
    return m;
}

MatrixF MatrixF::scalar_matrix(const PrecisionContext& ctx, int n, const QuadExtScalar& c) {
    MatrixF m = zero(ctx, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
}

MatrixF MatrixF::operator+(const MatrixF& o) const {
    if (n_ != o.n_) throw bad_parameter("matrix dimension mismatch");
    MatrixF r = *this;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

MatrixF MatrixF::operator-(const MatrixF& o) const { return *this + (-o); }

MatrixF MatrixF::operator-() const {
    MatrixF r = *this;
    for (auto& x : r.e_) x = -x;
    return r;
}

MatrixF MatrixF::operator*(const MatrixF& o) const {
    if (n_ != o.n_) throw bad_parameter("matrix dimension mismatch");
    MatrixF r = *this;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            QuadExtScalar acc = at(i, 0) * o.at(0, j);
            for (int k = 1; k < n_; ++k) acc = acc + at(i, k) * o.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

MatrixF MatrixF::scaled(const QuadExtScalar& c) const {
    MatrixF r = *this;
    for (auto& x : r.e_) x = x * c;
    return r;
}

MatrixF MatrixF::shifted(long k) const {
    MatrixF r = *this;
    for (auto& x : r.e_) x = x.shifted(k);
    return r;
}

MatrixF MatrixF::conjugate() const {
    MatrixF r = *this;
    for (auto& x : r.e_) x = x.conj();
    return r;
}

MatrixF MatrixF::transpose() const {
    MatrixF r = *this;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r.at(i, j) = at(j, i);
    return r;
}

MatrixF MatrixF::conj_transpose() const { return conjugate().transpose(); }

QuadExtScalar MatrixF::trace() const {
    QuadExtScalar t = at(0, 0);
    for (int i = 1; i < n_; ++i) t = t + at(i, i);
    return t;
}

namespace {

QuadExtScalar det_rec(const MatrixF& m, std::vector<int>& cols, int row) {
    int n = m.n();
    if (row == n - 1) return m.at(row, cols[0]);
    QuadExtScalar acc;
    for (size_t idx = 0; idx < cols.size(); ++idx) {
        int c = cols[idx];
        std::vector<int> rest;
        rest.reserve(cols.size() - 1);
        for (size_t j = 0; j < cols.size(); ++j)
            if (j != idx) rest.push_back(cols[j]);
        QuadExtScalar term = m.at(row, c) * det_rec(m, rest, row + 1);
        if (idx % 2 == 1) term = -term;
        acc = acc.is_null() ? term : acc + term;
    }
    return acc;
}

} // namespace

QuadExtScalar MatrixF::det() const {
    std::vector<int> cols(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) cols[static_cast<size_t>(i)] = i;
    return det_rec(*this, cols, 0);
}

MatrixF MatrixF::inverse() const {
    QuadExtScalar d = det();
    bool nonzero;
    try {
        nonzero = d.decide_nonzero();
    } catch (const precision_exhausted&) {
        throw on_divisor("determinant undetermined at working precision");
    }
    if (!nonzero) throw on_divisor("matrix is singular");
    QuadExtScalar dinv = d.inverse();
    MatrixF r = *this;
    if (n_ == 1) {
        r.at(0, 0) = dinv;
        return r;
    }
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            // cofactor expansion of the (j, i) minor
            std::vector<int> cols;
            for (int c = 0; c < n_; ++c)
                if (c != i) cols.push_back(c);
            MatrixF minor(n_ - 1, e_[0]);
            int rr = 0;
            for (int a = 0; a < n_; ++a) {
                if (a == j) continue;
                for (int b = 0; b < n_ - 1; ++b) minor.at(rr, b) = at(a, cols[static_cast<size_t>(b)]);
                ++rr;
            }
            QuadExtScalar cof = minor.det();
            if ((i + j) % 2 == 1) cof = -cof;
            r.at(i, j) = cof * dinv;
        }
    return r;
}

MatrixF MatrixF::pow(unsigned k) const {
    if (k == 0) throw bad_parameter("use identity() for the zeroth power");
    MatrixF r = *this;
    for (unsigned i = 1; i < k; ++i) r = r * *this;
    return r;
}

std::vector<QuadExtScalar> MatrixF::charpoly(const PrecisionContext& ctx) const {
    // Faddeev–LeVerrier; the divisions are by 1..n, all units for p ≥ 5.
    int n = n_;
    std::vector<QuadExtScalar> c(static_cast<size_t>(n) + 1, QuadExtScalar::zero(ctx));
    c[static_cast<size_t>(n)] = QuadExtScalar::one(ctx);
    MatrixF m = *this; // M₁ = x
    for (int k = 1; k <= n; ++k) {
        QuadExtScalar ck = -m.trace();
        if (k > 1) {
            PadicScalar kinv = PadicScalar::from_integer(ctx, k).inverse();
            ck = ck * QuadExtScalar::from_padic(ctx, kinv);
        }
        c[static_cast<size_t>(n - k)] = ck;
        if (k < n) m = *this * (m + MatrixF::scalar_matrix(ctx, n, ck));
    }
    return c;
}

QuadExtScalar MatrixF::charpoly_at(const QuadExtScalar& t, const PrecisionContext& ctx) const {
    std::vector<QuadExtScalar> c = charpoly(ctx);
    QuadExtScalar acc = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) acc = acc * t + c[i];
    return acc;
}

bool MatrixF::has_integral_charpoly(const PrecisionContext& ctx) const {
    bool undetermined = false;
    for (const auto& c : charpoly(ctx)) {
        try {
            if (!c.is_integral()) return false;
        } catch (const precision_exhausted&) {
            undetermined = true;
        }
    }
    if (undetermined)
        throw precision_exhausted("charpoly integrality undetermined at working precision");
    return true;
}

std::vector<QuadExtScalar> MatrixF::apply(const std::vector<QuadExtScalar>& v) const {
    std::vector<QuadExtScalar> r(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        QuadExtScalar acc = at(i, 0) * v[0];
        for (int k = 1; k < n_; ++k) acc = acc + at(i, k) * v[static_cast<size_t>(k)];
        r[static_cast<size_t>(i)] = acc;
    }
    return r;
}

std::vector<QuadExtScalar> MatrixF::apply_left(const std::vector<QuadExtScalar>& w) const {
    std::vector<QuadExtScalar> r(static_cast<size_t>(n_));
    for (int j = 0; j < n_; ++j) {
        QuadExtScalar acc = w[0] * at(0, j);
        for (int k = 1; k < n_; ++k) acc = acc + w[static_cast<size_t>(k)] * at(k, j);
        r[static_cast<size_t>(j)] = acc;
    }
    return r;
}

bool MatrixF::is_integral() const {
    bool undetermined = false;
    for (const auto& x : e_) {
        try {
            if (!x.is_integral()) return false;
        } catch (const precision_exhausted&) {
            undetermined = true;
        }
    }
    if (undetermined)
        throw precision_exhausted("matrix integrality undetermined at working precision");
    return true;
}

bool MatrixF::eq(const MatrixF& o) const {
    if (n_ != o.n_) throw bad_parameter("matrix dimension mismatch");
    bool undetermined = false;
    for (size_t i = 0; i < e_.size(); ++i) {
        try {
            if (!e_[i].eq(o.e_[i])) return false;
        } catch (const precision_exhausted&) {
            undetermined = true;
        }
    }
    if (undetermined)
        throw precision_exhausted("matrix comparison undetermined at working precision");
    return true;
}

MatrixF hermitian_form(const PrecisionContext& ctx, int n) {
    MatrixF j = MatrixF::identity(ctx, n);
    j.at(0, 0) = -QuadExtScalar::uniformizer_pow(ctx, 1);
    return j;
}

MatrixF embed_upper_left(const PrecisionContext& ctx, const MatrixF& h, int n) {
    if (h.n() > n) throw bad_parameter("embedded block larger than ambient matrix");
    MatrixF m = MatrixF::identity(ctx, n);
    for (int i = 0; i < h.n(); ++i)
        for (int j = 0; j < h.n(); ++j) m.at(i, j) = h.at(i, j);
    return m;
}

bool membership(const MatrixF& x, SpaceKind space, const PrecisionContext& ctx) {
    switch (space) {
        case SpaceKind::U: {
            MatrixF j = hermitian_form(ctx, x.n());
            return (x.conj_transpose() * j * x).eq(j);
        }
        case SpaceKind::LieU: {
            MatrixF j = hermitian_form(ctx, x.n());
            return (x.conj_transpose() * j + j * x).eq(MatrixF::zero(ctx, x.n()));
        }
        case SpaceKind::S:
            return (x * x.conjugate()).eq(MatrixF::identity(ctx, x.n()));
        case SpaceKind::LieS:
            return (x + x.conjugate()).eq(MatrixF::zero(ctx, x.n()));
    }
    throw bad_parameter("unknown space");
}

MatrixF moment_matrix_cols(const MatrixF& x, const PrecisionContext& ctx) {
    int n = x.n();
    std::vector<QuadExtScalar> v(static_cast<size_t>(n), QuadExtScalar::zero(ctx));
    v[static_cast<size_t>(n - 1)] = QuadExtScalar::one(ctx);
    MatrixF m = MatrixF::zero(ctx, n);
    for (int i = 0; i < n; ++i) {
        for (int r = 0; r < n; ++r) m.at(r, i) = v[static_cast<size_t>(r)];
        if (i + 1 < n) v = x.apply(v);
    }
    return m;
}

MatrixF moment_matrix_rows(const MatrixF& x, const PrecisionContext& ctx) {
    int n = x.n();
    std::vector<QuadExtScalar> w(static_cast<size_t>(n), QuadExtScalar::zero(ctx));
    w[static_cast<size_t>(n - 1)] = QuadExtScalar::one(ctx);
    MatrixF m = MatrixF::zero(ctx, n);
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < n; ++c) m.at(i, c) = w[static_cast<size_t>(c)];
        if (i + 1 < n) w = x.apply_left(w);
    }
    return m;
}

bool is_regular_semisimple(const MatrixF& x, const PrecisionContext& ctx) {
    return moment_matrix_cols(x, ctx).det().decide_nonzero() &&
           moment_matrix_rows(x, ctx).det().decide_nonzero();
}

int transfer_factor(const MatrixF& x, const PrecisionContext& ctx) {
    if (!is_regular_semisimple(x, ctx))
        throw not_regular_semisimple("transfer factor needs a regular semisimple argument");
    return eta_ext(moment_matrix_cols(x, ctx).det());
}

MatchingInvariants matching_invariants(const MatrixF& x, const PrecisionContext& ctx) {
    if (!is_regular_semisimple(x, ctx))
        throw not_regular_semisimple("matching invariants need a regular semisimple argument");
    MatchingInvariants inv;
    inv.charpoly = x.charpoly(ctx);
    MatrixF power = x;
    int n = x.n();
    for (int i = 1; i <= 2 * n - 2; ++i) {
        inv.corner_moments.push_back(power.at(n - 1, n - 1));
        if (i < 2 * n - 2) power = power * x;
    }
    return inv;
}

bool matches(const MatrixF& x, const MatrixF& y, const PrecisionContext& ctx) {
    MatchingInvariants a = matching_invariants(x, ctx);
    MatchingInvariants b = matching_invariants(y, ctx);
    bool undetermined = false;
    auto cmp_all = [&](const std::vector<QuadExtScalar>& u, const std::vector<QuadExtScalar>& v) {
        for (size_t i = 0; i < u.size(); ++i) {
            try {
                if (!u[i].eq(v[i])) return false;
            } catch (const precision_exhausted&) {
                undetermined = true;
            }
        }
        return true;
    };
    if (!cmp_all(a.charpoly, b.charpoly)) return false;
    if (!cmp_all(a.corner_moments, b.corner_moments)) return false;
    if (undetermined)
        throw precision_exhausted("matching comparison undetermined at working precision");
    return true;
}

LinearSolution solve_linear(const std::vector<std::vector<QuadExtScalar>>& a,
                            const std::vector<QuadExtScalar>& b, const PrecisionContext& ctx) {
    size_t m = a.size();
    size_t k = m ? a[0].size() : 0;
    std::vector<std::vector<QuadExtScalar>> w = a;
    std::vector<QuadExtScalar> rhs = b;
    std::vector<long> pivot_row_of_col(k, -1);
    size_t rank = 0;
    for (size_t col = 0; col < k && rank < m; ++col) {
        // pick a decidably nonzero pivot of minimal valuation
        long best = -1;
        long best_val = 0;
        bool saw_undetermined = false;
        for (size_t r = rank; r < m; ++r) {
            const QuadExtScalar& cand = w[r][col];
            if (cand.is_zero_at_precision()) continue;
            if (!cand.known_nonzero()) {
                saw_undetermined = true;
                continue;
            }
            long v = cand.valuation().exact_or_throw();
            if (best < 0 || v < best_val) {
                best = static_cast<long>(r);
                best_val = v;
            }
        }
        if (best < 0) {
            if (saw_undetermined)
                throw precision_exhausted("pivot selection undetermined at working precision");
            continue; // free column
        }
        std::swap(w[static_cast<size_t>(best)], w[rank]);
        std::swap(rhs[static_cast<size_t>(best)], rhs[rank]);
        QuadExtScalar inv = w[rank][col].inverse();
        for (size_t r = 0; r < m; ++r) {
            if (r == rank) continue;
            const QuadExtScalar& lead = w[r][col];
            if (lead.is_zero_at_precision()) continue;
            QuadExtScalar f = lead * inv;
            for (size_t c = col; c < k; ++c) w[r][c] = w[r][c] - f * w[rank][c];
            rhs[r] = rhs[r] - f * rhs[rank];
        }
        pivot_row_of_col[col] = static_cast<long>(rank);
        ++rank;
    }
    // consistency of the eliminated rows
    for (size_t r = rank; r < m; ++r)
        if (!rhs[r].is_zero_at_precision()) {
            if (rhs[r].known_nonzero()) throw error("inconsistent linear system");
            throw precision_exhausted("consistency check undetermined at working precision");
        }
    LinearSolution sol;
    sol.unique = (rank == k);
    sol.coords.assign(k, QuadExtScalar::zero(ctx));
    for (size_t col = 0; col < k; ++col) {
        long r = pivot_row_of_col[col];
        if (r >= 0) sol.coords[col] = rhs[static_cast<size_t>(r)] / w[static_cast<size_t>(r)][col];
    }
    return sol;
}

MatrixF sample_matrix_integral(const PrecisionContext& ctx, int n, Rng& rng) {
    MatrixF m = MatrixF::zero(ctx, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = sample_quadext_integral(ctx, rng);
    return m;
}

MatrixF sample_lie_s_integral(const PrecisionContext& ctx, int n, Rng& rng) {
    MatrixF m = MatrixF::zero(ctx, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) = QuadExtScalar(PadicScalar::zero(ctx), sample_padic_integral(ctx, rng),
                                       ctx.eps());
    return m;
}

MatrixF sample_lie_u_integral(const PrecisionContext& ctx, int n, Rng& rng) {
    // per the block description of the Lie algebra: top-left entry and the
    // (n−1)×(n−1) block are skew-hermitian, the first column carries π·conj
    // of the first row's tail.
    MatrixF m = MatrixF::zero(ctx, n);
    auto tau_int = [&]() {
        return QuadExtScalar(PadicScalar::zero(ctx), sample_padic_integral(ctx, rng), ctx.eps());
    };
    m.at(0, 0) = tau_int();
    for (int j = 1; j < n; ++j) {
        QuadExtScalar v = sample_quadext_integral(ctx, rng);
        m.at(0, j) = v;
        m.at(j, 0) = v.conj().shifted(1); // π·conj(v)
    }
    for (int i = 1; i < n; ++i) {
        m.at(i, i) = tau_int();
        for (int j = i + 1; j < n; ++j) {
            QuadExtScalar v = sample_quadext_integral(ctx, rng);
            m.at(i, j) = v;
            m.at(j, i) = -v.conj();
        }
    }
    return m;
}

MatrixF sample_gl_integral(const PrecisionContext& ctx, int n, Rng& rng) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        MatrixF m = sample_matrix_integral(ctx, n, rng);
        Valuation v = m.det().valuation();
        if (v.is_exact() && v.exact_or_throw() == 0) return m;
    }
    throw unsatisfiable_constraint("failed to sample a unit-determinant matrix");
}

MatrixF sample_gl_f(const PrecisionContext& ctx, int n, Rng& rng) {
    MatrixF d = MatrixF::zero(ctx, n);
    for (int i = 0; i < n; ++i)
        d.at(i, i) = QuadExtScalar::uniformizer_pow(ctx, rng.range(-2, 2));
    return sample_gl_integral(ctx, n, rng) * d * sample_gl_integral(ctx, n, rng);
}

MatrixF sample_gl_f0_integral(const PrecisionContext& ctx, int n, Rng& rng) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        MatrixF m = MatrixF::zero(ctx, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m.at(i, j) = QuadExtScalar::from_padic(ctx, sample_padic_integral(ctx, rng));
        Valuation v = m.det().valuation();
        if (v.is_exact() && v.exact_or_throw() == 0) return m;
    }
    throw unsatisfiable_constraint("failed to sample a unit-determinant matrix");
}

MatrixF sample_gl_f0(const PrecisionContext& ctx, int n, Rng& rng) {
    MatrixF d = MatrixF::zero(ctx, n);
    for (int i = 0; i < n; ++i)
        d.at(i, i) = QuadExtScalar::uniformizer_pow(ctx, rng.range(-2, 2));
    return sample_gl_f0_integral(ctx, n, rng) * d * sample_gl_f0_integral(ctx, n, rng);
}

} // namespace afl3
