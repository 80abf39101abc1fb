#pragma once

#include "afl3/canonical.hpp"

namespace afl3 {

/// The modified Cayley transform x ↦ −λ(κ+x)(κ−x)⁻¹, an isomorphism away
/// from the divisor det(κ−x) = 0. For λ ∈ F¹ and κ ∈ 𝒪_{F₀}^× it exchanges
/// the Lie algebra with the unitary group, and the tangent space with the
/// symmetric space. Its inverse is the same map with λ and κ swapped.
MatrixF cayley(const MatrixF& x, const QuadExtScalar& lambda, const QuadExtScalar& kappa,
               const PrecisionContext& ctx);

/// Parameter pair for the transform; norm(λ) = 1 and v(κ) = 0 are enforced.
struct CayleyParams {
    QuadExtScalar lambda;
    QuadExtScalar kappa;
};
CayleyParams make_cayley_params(const PrecisionContext& ctx, QuadExtScalar lambda,
                                QuadExtScalar kappa);

/// A unit κ with det(κ−x) a unit, found by sweeping the unit residues
/// 1, 2, …, p−1 in order (at most n eigenvalue residues can collide, so a
/// choice exists whenever n + 2 ≤ q). Requires an integral characteristic
/// polynomial.
PadicScalar find_kappa(const MatrixF& x, const PrecisionContext& ctx);

/// A norm-one λ with det(λ−γ) a unit, via the Hilbert-90 parametrization
/// λ = c/conj(c) swept over the q+1 norm-one residue classes.
QuadExtScalar find_lambda(const MatrixF& g, const PrecisionContext& ctx);

/// 𝒪_F[x] = 𝒪_F[c_κ(x)], tested by expressing each side as a polynomial in
/// the other over the power basis 1, x, …, x^{n−1} and checking the
/// coefficients are integral.
bool verify_order_equality(const MatrixF& x, const PadicScalar& kappa,
                           const PrecisionContext& ctx);

/// The group↔Lie comparison for γ in the symmetric space with integral
/// characteristic polynomial and a good λ:
///   (i)  Ω(γ) = ω(c⁻¹_λ(γ));
///   (ii) per enumerated coset, h·γ·h⁻¹ integral ⟺ h·c⁻¹_λ(γ)·h⁻¹ integral;
///   (iii) the two tallies are identical.
struct CorrespondReport {
    int omega_group = 0;
    int omega_lie = 0;
    bool transfer_factors_agree = false;
    bool per_coset_agree = false;
    bool tallies_agree = false;
    OrbitalTally group_tally;
    OrbitalTally lie_tally;
    bool all() const { return transfer_factors_agree && per_coset_agree && tallies_agree; }
};
CorrespondReport verify_correspond(const MatrixF& gamma, const QuadExtScalar& lambda,
                                   const CosetShape& shape, const Window& window,
                                   const PrecisionContext& ctx, const OracleOptions& opt = {});

} // namespace afl3
