#pragma once

#include <optional>

#include "afl3/quadext.hpp"

namespace afl3 {

/// splitmix64; deterministic across platforms, good enough for test inputs.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
    long range(long lo, long hi) { // inclusive
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }
};

struct SampleConstraints {
    std::optional<long> valuation; // exact valuation request
    bool unit = false;             // v = 0
    bool in_tau_f0 = false;        // re = 0
    bool in_f0 = false;            // im = 0
    bool integral = false;         // value drawn from 𝒪 uniformly mod π^N
};

/// Deterministic given the seed; output satisfies the constraints.
QuadExtScalar sample(const PrecisionContext& ctx, const SampleConstraints& c, uint64_t seed);
QuadExtScalar sample(const PrecisionContext& ctx, const SampleConstraints& c, Rng& rng);

PadicScalar sample_padic_unit(const PrecisionContext& ctx, Rng& rng);
PadicScalar sample_padic_integral(const PrecisionContext& ctx, Rng& rng);
PadicScalar sample_padic_with_valuation(const PrecisionContext& ctx, long v, Rng& rng);
QuadExtScalar sample_quadext_unit(const PrecisionContext& ctx, Rng& rng);
QuadExtScalar sample_quadext_integral(const PrecisionContext& ctx, Rng& rng);
QuadExtScalar sample_quadext_with_valuation(const PrecisionContext& ctx, long v, Rng& rng);
/// A norm-one element λ = c/conj(c) with random unit c (Hilbert 90 shape).
QuadExtScalar sample_norm_one(const PrecisionContext& ctx, Rng& rng);

} // namespace afl3
