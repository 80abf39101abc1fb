#include "afl3/sampling.hpp"

namespace afl3 {

namespace {

mpz_class random_digits(const PrecisionContext& ctx, Rng& rng, bool unit_leading) {
    mpz_class v = 0;
    for (long i = ctx.precision() - 1; i >= 0; --i) {
        uint64_t d = (i == 0 && unit_leading) ? 1 + rng.below(ctx.p() - 1) : rng.below(ctx.p());
        v = v * static_cast<unsigned long>(ctx.p()) + static_cast<unsigned long>(d);
    }
    return v;
}

} // namespace

PadicScalar sample_padic_unit(const PrecisionContext& ctx, Rng& rng) {
    return PadicScalar::from_unit_valuation(ctx, random_digits(ctx, rng, true), 0);
}

PadicScalar sample_padic_with_valuation(const PrecisionContext& ctx, long v, Rng& rng) {
    return PadicScalar::from_unit_valuation(ctx, random_digits(ctx, rng, true), v);
}

PadicScalar sample_padic_integral(const PrecisionContext& ctx, Rng& rng) {
    return PadicScalar::from_mpz(ctx, random_digits(ctx, rng, false));
}

QuadExtScalar sample_quadext_integral(const PrecisionContext& ctx, Rng& rng) {
    return {sample_padic_integral(ctx, rng), sample_padic_integral(ctx, rng), ctx.eps()};
}

QuadExtScalar sample_quadext_unit(const PrecisionContext& ctx, Rng& rng) {
    // at least one component is a unit; the other is integral
    if (rng.below(2) == 0)
        return {sample_padic_unit(ctx, rng), sample_padic_integral(ctx, rng), ctx.eps()};
    return {sample_padic_integral(ctx, rng), sample_padic_unit(ctx, rng), ctx.eps()};
}

QuadExtScalar sample_quadext_with_valuation(const PrecisionContext& ctx, long v, Rng& rng) {
    QuadExtScalar u = sample_quadext_unit(ctx, rng);
    return u.shifted(v);
}

QuadExtScalar sample_norm_one(const PrecisionContext& ctx, Rng& rng) {
    QuadExtScalar c = sample_quadext_unit(ctx, rng);
    return c / c.conj();
}

QuadExtScalar sample(const PrecisionContext& ctx, const SampleConstraints& c, Rng& rng) {
    if (c.in_tau_f0 && c.in_f0)
        throw unsatisfiable_constraint("cannot be purely real and purely imaginary");
    if (c.unit && c.valuation && *c.valuation != 0)
        throw unsatisfiable_constraint("unit requires valuation 0");

    std::optional<long> v = c.valuation;
    if (c.unit) v = 0;

    auto component = [&](bool leading) {
        if (v) return PadicScalar::from_unit_valuation(ctx, random_digits(ctx, rng, leading), *v);
        return sample_padic_integral(ctx, rng);
    };

    if (c.in_f0) return {component(true), PadicScalar::zero(ctx), ctx.eps()};
    if (c.in_tau_f0) return {PadicScalar::zero(ctx), component(true), ctx.eps()};
    if (v) return sample_quadext_with_valuation(ctx, *v, rng);
    (void)c.integral;
    return sample_quadext_integral(ctx, rng);
}

QuadExtScalar sample(const PrecisionContext& ctx, const SampleConstraints& c, uint64_t seed) {
    Rng rng(seed);
    return sample(ctx, c, rng);
}

} // namespace afl3
