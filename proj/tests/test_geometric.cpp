#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "afl3/canonical.hpp"
#include "afl3/lengths.hpp"

using namespace afl3;

TEST_CASE("a(k) examples") {
    CHECK(a_of(5, 0) == 1);
    CHECK(a_of(5, 1) == 7);  // q + 2
    CHECK(a_of(5, 2) == 37); // q² + 2q + 2
    CHECK(a_of(7, 1) == 9);
    CHECK_THROWS_AS(a_of(5, -1), invalid_level);
}

TEST_CASE("gk_length examples") {
    CHECK(gk_length(5, 1, 0) == 1); // a(0)
    CHECK(gk_length(5, 1, 1) == 2); // a(0) + q⁰
    CHECK(gk_length(5, 1, 3) == 8); // a(0) + q⁰ + 1·e₁ with e₁ = q + 1
    CHECK(ramification_index(5, 1) == 6);
    CHECK(ramification_index(5, 0) == 1);
    // the s = 0 convention for odd levels
    CHECK(gk_length(5, 0, 1) == 1);
    CHECK(gk_length(5, 0, 5) == 3);
    CHECK_THROWS_AS(gk_length(5, 1, -1), invalid_level);
}

TEST_CASE("zs_length branch examples") {
    // l < 2s with level l: a((l−1)/2) + q^{(l−1)/2}
    InstanceShape sh{5, Parity::odd, 2, 0, 1}; // l = 1, k = 2, v(j) = 5
    CHECK(zs_length(sh, 3) == a_of(5, 0) + 1);
    // k < l and k < 2s: a(k/2)
    InstanceShape sh2{5, Parity::odd, 1, 1, 0}; // l = 3, k = 0
    CHECK(zs_length(sh2, 1) == a_of(5, 0));
    // k = 0, l = 1, s = 1 matches the analytic value 1
    InstanceShape sh3{5, Parity::odd, 0, 0, 0};
    CHECK(zs_length(sh3, 1) == 1);
    CHECK_THROWS_AS(zs_length(sh3, 0), bad_parameter); // wrong parity class
}

TEST_CASE("geometric side examples") {
    InstanceShape w1{5, Parity::odd, 0, 0, 0};
    LengthBreakdown b1 = geometric_side(w1);
    CHECK(b1.total == 1);
    CHECK(b1.per_level.size() == 1);
    CHECK(b1.per_level.at(1) == 1);

    InstanceShape w2{5, Parity::odd, 1, 0, 1};
    LengthBreakdown b2 = geometric_side(w2);
    CHECK(b2.total == 4);
    CHECK(b2.per_level.at(1) == 2);
    CHECK(b2.per_level.at(3) == 2);

    InstanceShape bad{5, Parity::odd, 0, -1, 0};
    CHECK(geometric_side(bad).total == 0);
    CHECK(geometric_side(bad).per_level.empty());
}

TEST_CASE("lengths are nonnegative and weakly increase in l") {
    for (long q : {5L, 7L})
        for (Parity parity : {Parity::odd, Parity::even})
            for (long m = 0; m <= 2; ++m)
                for (long va = -1; va <= 2; ++va) {
                    std::optional<long> ova =
                        va < 0 ? std::optional<long>() : std::optional<long>(va);
                    long long prev = -1;
                    for (long vb = 0; vb <= 3; ++vb) {
                        InstanceShape sh{q, parity, m, vb, ova};
                        long long total = 0;
                        for (long s = sh.vj() % 2; s <= sh.vj(); s += 2) {
                            long long len = zs_length(sh, s);
                            CHECK(len >= 0);
                            total += len;
                        }
                        CHECK(total >= prev);
                        prev = total;
                    }
                }
}

TEST_CASE("per-level pairing against the counting side") {
    for (long q : {5L, 7L})
        for (Parity parity : {Parity::odd, Parity::even})
            for (long m = 0; m <= 2; ++m)
                for (long vb = 0; vb <= 2; ++vb)
                    for (long va = -1; va <= 2; ++va) {
                        InstanceShape sh{q, parity, m, vb,
                                         va < 0 ? std::optional<long>() : std::optional<long>(va)};
                        for (long s = sh.vj() % 2; s <= sh.vj(); s += 2) {
                            long long pair =
                                sigma_closed(sh, s) + (s > 0 ? sigma_closed(sh, s - 1) : 0);
                            CHECK(pair == zs_length(sh, s));
                        }
                        CHECK(analytic_side_closed(sh) == geometric_side(sh).total);
                    }
}

TEST_CASE("the corrected pair closed form, and the rejected variant") {
    InstanceShape sh{5, Parity::odd, 2, 1, std::nullopt}; // l = 3, v(j) = 5
    for (long s = 1; s <= sh.vj(); s += 2) {
        CHECK(sigma_pair_low_b_closed(sh, s) == zs_length(sh, s));
        if (sh.l() > 2 * s) {
            long long variant = 2 * geom_sum(5, s - 1) +
                                ((sh.l() - 1) / 2 - s) * ramification_index(5, s);
            CHECK(variant != zs_length(sh, s));
        }
    }
}

TEST_CASE("coordinate change into the quaternion relation algebra") {
    for (uint64_t p : {5ull, 7ull}) {
        PrecisionContext ctx(p, 24);
        Rng rng(p);
        for (int i = 0; i < 50; ++i) {
            QuadExtScalar a(PadicScalar::zero(ctx), sample_padic_integral(ctx, rng), ctx.eps());
            QuadExtScalar b = sample_quadext_integral(ctx, rng);
            // without the anticommutation ϖ·f = conj(f)·ϖ the lower-right
            // entry would come out as a − ϖb instead
            CHECK(quasi_diagonalization_check(a, b, ctx));
        }
    }
}
