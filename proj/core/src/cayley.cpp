#include "afl3/cayley.hpp"

#include <algorithm>

namespace afl3 {

MatrixF cayley(const MatrixF& x, const QuadExtScalar& lambda, const QuadExtScalar& kappa,
               const PrecisionContext& ctx) {
    int n = x.n();
    MatrixF kap = MatrixF::scalar_matrix(ctx, n, kappa);
    MatrixF denom = kap - x;
    MatrixF inv = denom.inverse(); // throws on_divisor on the divisor
    return ((kap + x) * inv).scaled(-lambda);
}

CayleyParams make_cayley_params(const PrecisionContext& ctx, QuadExtScalar lambda,
                                QuadExtScalar kappa) {
    if (!lambda.norm().eq(PadicScalar::from_integer(ctx, 1)))
        throw bad_parameter("lambda must have norm 1");
    if (!kappa.in_base_field())
        throw bad_parameter("kappa must lie in the base field");
    Valuation v = kappa.valuation();
    if (!v.is_exact() || v.exact_or_throw() != 0)
        throw bad_parameter("kappa must be a unit");
    return {std::move(lambda), std::move(kappa)};
}

PadicScalar find_kappa(const MatrixF& x, const PrecisionContext& ctx) {
    if (!x.has_integral_charpoly(ctx))
        throw non_integral_charpoly("find_kappa needs an integral characteristic polynomial");
    for (uint64_t r = 1; r < ctx.p(); ++r) {
        QuadExtScalar kappa = QuadExtScalar::from_integer(ctx, static_cast<long long>(r));
        Valuation v = x.charpoly_at(kappa, ctx).valuation();
        if (v.is_infinite()) continue;
        if (v.is_exact() && v.exact_or_throw() == 0)
            return PadicScalar::from_integer(ctx, static_cast<long long>(r));
        if (!v.is_exact() && v.lower_bound() <= 0)
            throw precision_exhausted("det(kappa - x) undetermined at working precision");
    }
    throw no_unit_kappa("no unit residue avoids the eigenvalues (is p >= n+2?)");
}

QuadExtScalar find_lambda(const MatrixF& g, const PrecisionContext& ctx) {
    if (!g.has_integral_charpoly(ctx))
        throw non_integral_charpoly("find_lambda needs an integral characteristic polynomial");
    std::vector<std::pair<uint64_t, uint64_t>> seen; // residues of swept λ
    for (uint64_t ci = 0; ci < ctx.p(); ++ci) {
        for (uint64_t cr = 1; cr < ctx.p(); ++cr) {
            QuadExtScalar c(PadicScalar::from_integer(ctx, static_cast<long long>(cr)),
                            ci == 0 ? PadicScalar::zero(ctx)
                                    : PadicScalar::from_integer(ctx, static_cast<long long>(ci)),
                            ctx.eps());
            QuadExtScalar lambda = c / c.conj();
            uint64_t lr = lambda.re().is_zero_at_precision() ? 0 : lambda.re().residue_u64(1);
            uint64_t li = lambda.im().is_zero_at_precision() ? 0 : lambda.im().residue_u64(1);
            if (std::find(seen.begin(), seen.end(), std::make_pair(lr, li)) != seen.end())
                continue;
            seen.emplace_back(lr, li);
            Valuation v = g.charpoly_at(lambda, ctx).valuation();
            if (v.is_infinite()) continue;
            if (v.is_exact() && v.exact_or_throw() == 0) return lambda;
            if (!v.is_exact() && v.lower_bound() <= 0)
                throw precision_exhausted("det(lambda - g) undetermined at working precision");
        }
    }
    throw no_unit_lambda("no norm-one residue avoids the eigenvalues (is n <= q?)");
}

namespace {

/// Solve c = Σ u_i·x^i over F and test the coordinates for integrality.
/// For degenerate x (minimal polynomial of degree < n) the membership is
/// certified only when the particular solution is integral.
bool polynomial_membership_integral(const MatrixF& c, const MatrixF& x,
                                    const PrecisionContext& ctx) {
    int n = x.n();
    std::vector<std::vector<QuadExtScalar>> a(
        static_cast<size_t>(n) * n, std::vector<QuadExtScalar>(static_cast<size_t>(n),
                                                               QuadExtScalar::zero(ctx)));
    std::vector<QuadExtScalar> b(static_cast<size_t>(n) * n, QuadExtScalar::zero(ctx));
    MatrixF power = MatrixF::identity(ctx, n);
    for (int col = 0; col < n; ++col) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                a[static_cast<size_t>(i) * n + j][static_cast<size_t>(col)] = power.at(i, j);
        if (col + 1 < n) power = power * x;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[static_cast<size_t>(i) * n + j] = c.at(i, j);
    LinearSolution sol = solve_linear(a, b, ctx);
    bool integral = true;
    bool undetermined = false;
    for (const auto& u : sol.coords) {
        try {
            if (!u.is_integral()) integral = false;
        } catch (const precision_exhausted&) {
            undetermined = true;
        }
    }
    if (undetermined && integral)
        throw precision_exhausted("order membership undetermined at working precision");
    if (!integral && !sol.unique)
        throw not_regular_semisimple(
            "order membership undecided: degenerate power basis with a non-integral "
            "particular solution");
    return integral;
}

} // namespace

bool verify_order_equality(const MatrixF& x, const PadicScalar& kappa,
                           const PrecisionContext& ctx) {
    QuadExtScalar kap = QuadExtScalar::from_padic(ctx, kappa);
    QuadExtScalar one = QuadExtScalar::one(ctx);
    MatrixF c = cayley(x, one, kap, ctx);
    return polynomial_membership_integral(c, x, ctx) &&
           polynomial_membership_integral(x, c, ctx);
}

CorrespondReport verify_correspond(const MatrixF& gamma, const QuadExtScalar& lambda,
                                   const CosetShape& shape, const Window& window,
                                   const PrecisionContext& ctx, const OracleOptions& opt) {
    CorrespondReport rep;
    if (!membership(gamma, SpaceKind::S, ctx))
        throw bad_parameter("verify_correspond needs an element of the symmetric space");
    QuadExtScalar one = QuadExtScalar::one(ctx);
    MatrixF y = cayley(gamma, one, lambda, ctx); // c⁻¹_λ(γ), in the tangent space
    if (!membership(y, SpaceKind::LieS, ctx))
        throw error("internal: Cayley image is not in the tangent space");

    rep.omega_group = transfer_factor(gamma, ctx);
    rep.omega_lie = transfer_factor(y, ctx);
    rep.transfer_factors_agree = (rep.omega_group == rep.omega_lie);

    rep.per_coset_agree = true;
    for (long s = window.s_lo; s <= window.s_hi; ++s)
        for (long t = 0; t <= window.t_hi; ++t) {
            JointCellResult cell = oracle_cell_joint(gamma, y, shape, s, t, ctx, opt);
            if (!cell.pointwise_equal) rep.per_coset_agree = false;
            if (cell.count_a)
                rep.group_tally.counts[shape.det_valuation(s, t)] += cell.count_a;
            if (cell.count_b) rep.lie_tally.counts[shape.det_valuation(s, t)] += cell.count_b;
        }
    rep.tallies_agree = (rep.group_tally == rep.lie_tally);
    return rep;
}

} // namespace afl3
