#pragma once

#include "afl3/oracle.hpp"

namespace afl3 {

/// A reduced 3×3 instance (d = 0, trace 0, normalized j):
///   odd  (v(j) = 2m+1):  x = [[−a, b, π^m], [π·conj(b), a, 0], [π^{m+1}, 0, 0]]
///   even (v(j) = 2m):    x = [[−a, b, 0], [π·conj(b), a, π^m], [0, −π^m, 0]]
/// with a ∈ τ·𝒪_{F₀} (possibly 0) and b ≠ 0 integral. Regular semisimplicity
/// is exactly b ≠ 0 here.
struct CanonicalInstance {
    PrecisionContext ctx;
    Parity parity;
    long m;
    QuadExtScalar a; // purely imaginary, possibly exact zero
    QuadExtScalar b; // nonzero

    InstanceShape shape() const;
    CosetShape coset_shape() const { return {parity, m}; }
};

/// Deterministic instance from valuations and a unit seed; va empty means a = 0.
CanonicalInstance make_instance(const PrecisionContext& ctx, Parity parity, long m,
                                std::optional<long> va, long vb, uint64_t seed);
/// Validating constructor from explicit scalars.
CanonicalInstance make_instance_from(const PrecisionContext& ctx, Parity parity, long m,
                                     QuadExtScalar a, QuadExtScalar b);

MatrixF build_x(const CanonicalInstance& inst);
MatrixF build_match_y(const CanonicalInstance& inst);

/// The general (unreduced) forms with diagonal (a1, a2, d); used by the raw
/// entry point, including non-integral inputs.
MatrixF build_x_general(const PrecisionContext& ctx, Parity parity, long m,
                        const QuadExtScalar& a1, const QuadExtScalar& a2, const QuadExtScalar& d,
                        const QuadExtScalar& b);
MatrixF build_match_y_general(const PrecisionContext& ctx, Parity parity, long m,
                              const QuadExtScalar& a1, const QuadExtScalar& a2,
                              const QuadExtScalar& d, const QuadExtScalar& b);

/// Closed-form count of valid ⋆ classes for one (s, t) cell. Returns 0
/// outside 0 ≤ s ≤ v(j), 0 ≤ t, and on empty cells.
long long alpha_closed(const InstanceShape& shape, long s, long t);

/// σ(s) = Σ_t (−1)^{t+1}(2m−2s+t+ε)·α(s,t), summed directly over the
/// finite support. Requires 0 ≤ s ≤ v(j).
long long sigma_direct(const InstanceShape& shape, long s);

/// σ(s) via the closed forms. The l < k branch at s = 0 uses the value
/// (l+1)/2 required by direct summation and by the per-level pairing with
/// the length side; see sigma_low_b_s0_alt for the rejected variant.
long long sigma_closed(const InstanceShape& shape, long s);

/// The (l−1)/2 variant of the s = 0 closed form in the l < k case. It fails
/// both cross-checks; kept so reports can demonstrate the discrepancy.
long long sigma_low_b_s0_alt(long l);

/// The pair closed form σ(s) + σ(s−1) in the l < k case; second branch
/// carries the ((l+1)/2 − s)·e_s coefficient forced by the length side
/// (the (l−1)/2 − s variant is again demonstrably off; see tests).
long long sigma_pair_low_b_closed(const InstanceShape& shape, long s);

/// The four t-ranges of σ(s) in the k < l case, summed directly, plus
/// E = B + D. Throws wrong_case when l < k.
struct CaseBParts {
    long long a_part, b_part, c_part, d_part, e_part;
};
CaseBParts high_b_parts_direct(const InstanceShape& shape, long s);
long long high_b_a_closed(const InstanceShape& shape, long s); // k/2 < s branch
long long high_b_c_closed(const InstanceShape& shape, long s);
long long high_b_e_closed(const InstanceShape& shape, long s);

/// Σ_{s=0}^{v(j)} σ(s) from the closed forms (0 for non-integral shapes).
long long analytic_side_closed(const InstanceShape& shape);

/// The same integer from the coset oracle on the built match y.
long long analytic_side_oracle(const CanonicalInstance& inst, const OracleOptions& opt = {});

/// Reduction of a raw Lie-algebra element to the canonical family:
/// checks membership and regular semisimplicity, requires the j column in
/// the normalized shape (one component zero), subtracts the diagonal
/// τ-integral part (d ↦ 0, trace ↦ 0) when the element is integral, and
/// reports the instance data. Non-integral inputs keep their unreduced
/// diagonal; both sides of the identity are 0 for them.
struct RawReduction {
    Parity parity;
    long m;
    bool integral;
    QuadExtScalar a, b;       // reduced data (integral case)
    QuadExtScalar a1, a2, d;  // unreduced diagonal (non-integral case)
};
RawReduction reduce_raw(const PrecisionContext& ctx, const MatrixF& x);

} // namespace afl3
