#pragma once

#include <map>

#include "afl3/quadext.hpp"
#include "afl3/shapes.hpp"

namespace afl3 {

/// a(k) = 1 + (q^k − 1)(q + 1)/(q − 1) = 1 + q + … + q^k + q^{k−1} + … + q + 1.
long long a_of(long long q, long k);

/// e_s: ramification index of the level-s ring class field; q^s + q^{s−1}
/// for s ≥ 1, and 1 at s = 0 (convention used by the s = 0 length below).
long long ramification_index(long long q, long s);

/// Length of the deformation locus of an endomorphism of the given ϖ-level
/// on a quasi-canonical lift of level s:
///   level ≤ 2s even:  a(level/2)
///   level ≤ 2s odd:   a((level−1)/2) + q^{(level−1)/2}
///   level ≥ 2s−1 odd: a(s−1) + q^{s−1} + ((level+1)/2 − s)·e_s
/// At s = 0 with odd level this reduces, with the conventions
/// a(−1) + q^{−1} := 0 and e_0 := 1, to (level+1)/2; that value is a
/// convention validated against the counting side, not an independent input.
long long gk_length(long long q, long s, long level);

/// len Z_s for the instance: the relative ϖ-level of a + ϖb against
/// 𝒪_s = 𝒪_{F₀} + π^s·𝒪_F is l when (l < k or 2s ≤ k), else k; then apply
/// gk_length. Requires 0 ≤ s ≤ v(j) and s ≡ v(j) (mod 2).
long long zs_length(const InstanceShape& shape, long s);

struct LengthBreakdown {
    std::map<long, long long> per_level; // s -> len Z_s
    long long total = 0;
};

/// Sum of zs_length over s ≡ v(j) (mod 2), 0 ≤ s ≤ v(j). Non-integral
/// shapes give an empty breakdown with total 0.
LengthBreakdown geometric_side(const InstanceShape& shape);

/// The coordinate change feeding the length computation: conjugating
/// z = [[a, ϖb], [ϖb, a]] by [[1, τ], [1, −τ]] inside the quaternion
/// relation algebra (ϖ² = π, ϖ·f = conj(f)·ϖ) must give diag(a+ϖb, a+ϖb).
/// Checked exactly at working precision.
bool quasi_diagonalization_check(const QuadExtScalar& a, const QuadExtScalar& b,
                                 const PrecisionContext& ctx);

} // namespace afl3
