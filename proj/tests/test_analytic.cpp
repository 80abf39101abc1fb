#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "afl3/canonical.hpp"
#include "afl3/lengths.hpp"

using namespace afl3;

namespace {

std::vector<InstanceShape> shape_grid(long q) {
    std::vector<InstanceShape> out;
    for (Parity parity : {Parity::odd, Parity::even})
        for (long m = 0; m <= 2; ++m)
            for (long vb = 0; vb <= 2; ++vb)
                for (long va = -1; va <= 2; ++va)
                    out.push_back({q, parity, m, vb,
                                   va < 0 ? std::optional<long>() : std::optional<long>(va)});
    return out;
}

} // namespace

TEST_CASE("built matrices have the advertised properties") {
    PrecisionContext ctx(5, 28);
    for (Parity parity : {Parity::odd, Parity::even}) {
        CanonicalInstance inst = make_instance(ctx, parity, 1, 0, 1, 6);
        MatrixF x = build_x(inst);
        MatrixF y = build_match_y(inst);
        CHECK(membership(x, SpaceKind::LieU, ctx));
        CHECK(membership(y, SpaceKind::LieS, ctx));
        CHECK(is_regular_semisimple(x, ctx));
        CHECK(matches(x, y, ctx));
        CHECK(transfer_factor(y, ctx) == +1);
        CHECK(x.trace().is_zero_at_precision());
        CHECK(x.at(2, 2).is_exact_zero());
    }
    // the odd match has entries τ⁻¹ at (2,1) and τ⁻¹·π^{m+1} at (3,1)
    CanonicalInstance odd = make_instance(ctx, Parity::odd, 2, 0, 0, 6);
    QuadExtScalar tau_inv = QuadExtScalar::tau(ctx).inverse();
    MatrixF y = build_match_y(odd);
    CHECK(y.at(1, 0).eq(tau_inv));
    CHECK(y.at(2, 0).eq(tau_inv.shifted(3)));

    CHECK_THROWS_AS(
        make_instance_from(ctx, Parity::odd, 0, QuadExtScalar::zero(ctx),
                           QuadExtScalar::zero(ctx)),
        degenerate_params);
}

TEST_CASE("alpha closed form examples") {
    // l < k family, t ≤ l, s ≥ ⌊t/2⌋
    InstanceShape caseA{5, Parity::odd, 2, 1, std::nullopt}; // l = 3, k = ∞
    CHECK(alpha_closed(caseA, 2, 2) == 5);  // q^{⌊t/2⌋}
    CHECK(alpha_closed(caseA, 1, 3) == 5);  // q^{min(1, s)}
    CHECK(alpha_closed(caseA, 2, 4) == 0);  // t > l
    CHECK(alpha_closed(caseA, -1, 0) == 0); // out of range
    CHECK(alpha_closed(caseA, 0, -1) == 0);

    // k < l with k < t ≤ l: q^{min(k/2,s)}, plus q^{k/2} when t ≤ s + k/2
    InstanceShape caseB{5, Parity::odd, 2, 2, 1}; // l = 5, k = 2
    CHECK(alpha_closed(caseB, 2, 3) == 10);       // both classes contribute
    CHECK(alpha_closed(caseB, 1, 3) == 5);        // the −1 class misses the coset
    CHECK(alpha_closed(caseB, 0, 3) == 1);        // min(k/2, s) = 0
}

TEST_CASE("alpha matches the oracle per cell across instances") {
    for (uint64_t p : {5ull, 7ull}) {
        PrecisionContext ctx(p, 28);
        for (Parity parity : {Parity::odd, Parity::even})
            for (long va = -1; va <= 1; ++va) {
                CanonicalInstance inst =
                    make_instance(ctx, parity, 1, va < 0 ? std::optional<long>() : va, 1,
                                  p + static_cast<uint64_t>(va + 2));
                MatrixF y = build_match_y(inst);
                InstanceShape shape = inst.shape();
                Window w = default_window(shape);
                OracleResult r =
                    enumerate_and_tally(y, Side::lie, inst.coset_shape(), w, ctx, {});
                for (const auto& [cell, count] : r.cells)
                    CHECK(count == alpha_closed(shape, cell.first, cell.second));
            }
    }
}

TEST_CASE("sigma_direct examples") {
    // l = 3, s = 0: direct summation gives (l+1)/2 = 2
    InstanceShape sh{5, Parity::even, 1, 1, std::nullopt};
    CHECK(sigma_direct(sh, 0) == 2);
    CHECK(sigma_low_b_s0_alt(3) == 1); // the rejected variant

    // l = 1: σ(s) = 1 for every admissible s
    InstanceShape sh2{5, Parity::odd, 2, 0, std::nullopt};
    for (long s = 0; s <= sh2.vj(); ++s) CHECK(sigma_direct(sh2, s) == 1);

    // k = 0, l = 1, m = 0 odd: σ(0) = 1, σ(1) = 0
    InstanceShape sh3{5, Parity::odd, 0, 0, 0};
    CHECK(sigma_direct(sh3, 0) == 1);
    CHECK(sigma_direct(sh3, 1) == 0);

    CHECK_THROWS_AS(sigma_direct(sh3, 2), bad_parameter);
    CHECK_THROWS_AS(sigma_direct(sh3, -1), bad_parameter);
}

TEST_CASE("sigma closed equals sigma direct everywhere") {
    for (long q : {5L, 7L})
        for (const InstanceShape& sh : shape_grid(q))
            for (long s = 0; s <= sh.vj(); ++s) CHECK(sigma_closed(sh, s) == sigma_direct(sh, s));
}

TEST_CASE("sigma closed branch examples") {
    // l < 2s: geometric sum 1 + q + … + q^{⌊l/2⌋}
    InstanceShape sh{5, Parity::odd, 2, 1, std::nullopt}; // l = 3, v(j) = 5
    CHECK(sigma_closed(sh, 4) == 1 + 5);
    // the s = 0 value in the l < k family is (l+1)/2, not (l−1)/2
    InstanceShape sh0{7, Parity::even, 0, 2, std::nullopt}; // l = 5
    CHECK(sigma_closed(sh0, 0) == 3);
    CHECK(sigma_direct(sh0, 0) == 3);
    CHECK(sigma_low_b_s0_alt(5) == 2);
}

TEST_CASE("k < l four-part bookkeeping") {
    for (long q : {5L, 7L})
        for (const InstanceShape& sh : shape_grid(q)) {
            if (sh.low_b_valuation()) continue;
            long k = *sh.k();
            for (long s = 0; s <= sh.vj(); ++s) {
                CaseBParts parts = high_b_parts_direct(sh, s);
                CHECK(parts.a_part + parts.b_part + parts.c_part + parts.d_part ==
                      sigma_direct(sh, s));
                if (2 * s > k) {
                    CHECK(parts.a_part == high_b_a_closed(sh, s));
                    CHECK(parts.c_part == high_b_c_closed(sh, s));
                    CHECK(parts.e_part == high_b_e_closed(sh, s));
                }
            }
            // the two pair identities used to close the k < l case
            long long qk2 = ipow(q, k / 2);
            for (long s = k / 2 + 1; s <= sh.vj(); ++s) {
                long long lhs_a = high_b_parts_direct(sh, s).a_part +
                                  high_b_parts_direct(sh, s - 1).a_part;
                long long coeff = 4 * sh.m - 4 * s + 3 + 2 * k + 2 * sh.eps();
                CHECK(lhs_a == 2 * geom_sum(q, k / 2 - 1) + qk2 - coeff * qk2);
                CaseBParts ps = high_b_parts_direct(sh, s);
                CaseBParts pm = high_b_parts_direct(sh, s - 1);
                CHECK(ps.c_part + pm.c_part + ps.e_part + pm.e_part == coeff * qk2);
            }
        }
}

TEST_CASE("analytic side examples and invariance") {
    PrecisionContext ctx(5, 24);

    // the two frozen witnesses, closed mode
    CHECK(analytic_side_closed(InstanceShape{5, Parity::odd, 0, 0, 0}) == 1);
    CHECK(analytic_side_closed(InstanceShape{5, Parity::odd, 1, 0, 1}) == 4);

    // non-integral shape gives 0
    CHECK(analytic_side_closed(InstanceShape{5, Parity::odd, 0, -1, 0}) == 0);

    // unit parts do not matter (three seeds, closed vs oracle)
    for (uint64_t seed = 1; seed <= 3; ++seed) {
        CanonicalInstance inst = make_instance(ctx, Parity::even, 1, 1, 1, seed);
        CHECK(analytic_side_oracle(inst, {}) == analytic_side_closed(inst.shape()));
    }
}

TEST_CASE("raw entry point") {
    PrecisionContext ctx(5, 28);
    Rng rng(33);

    // integral raw input with d ≠ 0 and nonzero trace reduces to the family
    QuadExtScalar tau = QuadExtScalar::tau(ctx);
    QuadExtScalar a1 = tau * QuadExtScalar::from_integer(ctx, 3);
    QuadExtScalar a2 = tau.shifted(1);
    QuadExtScalar d = tau * QuadExtScalar::from_integer(ctx, 2);
    QuadExtScalar b = sample_quadext_with_valuation(ctx, 0, rng);
    MatrixF x = build_x_general(ctx, Parity::odd, 1, a1, a2, d, b);
    RawReduction red = reduce_raw(ctx, x);
    CHECK(red.integral);
    CHECK(red.parity == Parity::odd);
    CHECK(red.m == 1);
    // reduced a = (a2 − a1)/2
    QuadExtScalar expected_a =
        (a2 - a1) * QuadExtScalar::from_padic(ctx, PadicScalar::from_integer(ctx, 2).inverse());
    CHECK(red.a.eq(expected_a));

    // the subtraction leaves the identity unchanged: same instance data
    CanonicalInstance inst = make_instance_from(ctx, red.parity, red.m, red.a, red.b);
    CHECK(analytic_side_closed(inst.shape()) == geometric_side(inst.shape()).total);

    // non-integral input: not reduced, flagged non-integral
    MatrixF xbad = build_x_general(ctx, Parity::even, 0, a1, a2, d,
                                   QuadExtScalar::uniformizer_pow(ctx, -1));
    RawReduction bad = reduce_raw(ctx, xbad);
    CHECK_FALSE(bad.integral);

    // b = 0 fails regular semisimplicity
    MatrixF xdeg = build_x_general(ctx, Parity::odd, 0, a1, -a1, QuadExtScalar::zero(ctx),
                                   QuadExtScalar::zero(ctx));
    CHECK_THROWS_AS(reduce_raw(ctx, xdeg), not_regular_semisimple);

    // j out of normalized shape is refused rather than guessed
    MatrixF xshape = build_x_general(ctx, Parity::odd, 0, a1, -a1, QuadExtScalar::zero(ctx), b);
    xshape.at(1, 2) = QuadExtScalar::one(ctx);
    xshape.at(2, 1) = -QuadExtScalar::one(ctx);
    CHECK_THROWS_AS(reduce_raw(ctx, xshape), error);
}

TEST_CASE("subtracting an admissible diagonal does not change the analytic side") {
    PrecisionContext ctx(5, 28);
    Rng rng(71);
    for (int i = 0; i < 10; ++i) {
        Parity parity = rng.below(2) ? Parity::odd : Parity::even;
        CanonicalInstance inst = make_instance(ctx, parity, 1, 0, 1, rng.next());
        MatrixF x = build_x(inst);
        // µ = diag(µ₁, µ₁, µ₂) with τ-integral entries
        QuadExtScalar mu1(PadicScalar::zero(ctx), sample_padic_integral(ctx, rng), ctx.eps());
        QuadExtScalar mu2(PadicScalar::zero(ctx), sample_padic_integral(ctx, rng), ctx.eps());
        MatrixF shifted = x;
        shifted.at(0, 0) = x.at(0, 0) + mu1;
        shifted.at(1, 1) = x.at(1, 1) + mu1;
        shifted.at(2, 2) = x.at(2, 2) + mu2;
        RawReduction red = reduce_raw(ctx, shifted);
        REQUIRE(red.integral);
        CanonicalInstance back = make_instance_from(ctx, red.parity, red.m, red.a, red.b);
        CHECK(analytic_side_closed(back.shape()) == analytic_side_closed(inst.shape()));
        CHECK(analytic_side_oracle(back, {}) == analytic_side_oracle(inst, {}));
    }
}
