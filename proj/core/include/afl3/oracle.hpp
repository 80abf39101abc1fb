#pragma once

#include <map>
#include <utility>

#include "afl3/matrix.hpp"
#include "afl3/shapes.hpp"

namespace afl3 {

/// Which unit-lattice indicator the integral counts: 1 on the symmetric
/// space (group side) or on its tangent space (Lie side). The per-coset
/// integrality test is the same; the side fixes the up-front membership
/// check on the input.
enum class Side { lie, group };

/// The triangular coset representatives of GL₂(𝒪_{F₀})\GL₂(F₀) used by the
/// enumeration:
///   odd:  h = π^{m+1−s}·[[1, ⋆],[0, π^t]]
///   even: h = π^{m−s}·[[π^t, 0],[⋆, 1]]
/// with t ≥ 0 and ⋆ ranging over 𝒪_{F₀}/π^t (cosets with t < 0 never meet
/// the support; see the corner certificate in the enumeration). The
/// determinant valuation is 2m − 2s + t + ε with ε = 2 (odd) / 0 (even).
struct CosetShape {
    Parity parity;
    long m;
    long det_valuation(long s, long t) const {
        return 2 * m - 2 * s + t + parity_offset(parity);
    }
};

/// The orbital integral as a finite map v(det h) ↦ coset count: a Laurent
/// polynomial in q^{−s} in disguise. Under the h ↦ h⁻¹ substitution
/// convention, O(s) = Σ_v N_v·(−1)^v·q^{vs} and the derived value below is
/// the integer dO with −ω(y)·∂O_y = log(q)·dO.
struct OrbitalTally {
    std::map<long, long long> counts;

    long long derived_value() const {
        long long acc = 0;
        for (const auto& [v, n] : counts) acc += (v % 2 == 0 ? -1 : 1) * v * n;
        return acc;
    }
    bool operator==(const OrbitalTally&) const = default;
};

struct OracleOptions {
    /// Full ⋆ enumeration while p^t does not exceed this; analytic counting above.
    long long enum_threshold = 1'000'000;
    /// Cross-check the analytic counter against brute force on every
    /// enumerated cell (criterion: exact agreement wherever p^t fits).
    bool self_check = false;
};

struct OracleResult {
    OrbitalTally tally;
    std::map<std::pair<long, long>, long long> cells; // (s, t) -> α count
};

/// Default window for an instance shape: s ∈ [−2, v(j)+2],
/// t ∈ [0, l + v(a) + v(j) + 4], clamped for non-integral raw inputs.
Window default_window(const InstanceShape& shape);

/// Count, for one (s, t) cell, the ⋆ classes whose conjugate h·y·h⁻¹ has
/// all nine entries integral. Exact at working precision.
long long oracle_cell_count(const MatrixF& y, const CosetShape& shape, long s, long t,
                            const PrecisionContext& ctx, const OracleOptions& opt = {});

/// Enumerate every representative in the window, test the nine entries of
/// h·y·h⁻¹ for integrality, and tally by determinant valuation. Asserts
/// that the two outermost rows/columns of the window carry no support
/// (window_too_small otherwise).
OracleResult enumerate_and_tally(const MatrixF& y, Side side, const CosetShape& shape,
                                 const Window& window, const PrecisionContext& ctx,
                                 const OracleOptions& opt = {});

/// Joint per-coset comparison of two inputs over one cell: counts for both
/// and pointwise agreement of the per-⋆ integrality verdicts. Requires the
/// cell to be within brute-force range.
struct JointCellResult {
    long long count_a = 0;
    long long count_b = 0;
    bool pointwise_equal = true;
};
JointCellResult oracle_cell_joint(const MatrixF& a, const MatrixF& b, const CosetShape& shape,
                                  long s, long t, const PrecisionContext& ctx,
                                  const OracleOptions& opt = {});

/// Number of ⋆ ∈ π^shift·𝒪/π^t·𝒪 with (⋆ − center)² ≡ target (mod π^t),
/// computed by valuation analysis and Hensel square-root counting (p odd).
/// With opt.self_check set and p^t within the enumeration threshold, the
/// result is verified against exhaustive enumeration.
long long count_quadratic_solutions(const PadicScalar& center, const PadicScalar& target, long t,
                                    long shift, const PrecisionContext& ctx,
                                    const OracleOptions& opt = {});

/// Two coset parameter triples describe the same coset iff h₁h₂⁻¹ lies in
/// GL₂(𝒪). Used by the well-definedness property test.
bool same_coset(const CosetShape& shape, long s1, long t1, long long star1, long s2, long t2,
                long long star2, const PrecisionContext& ctx);

/// The 3×3 representative matrix diag(h, 1) for the given cell and ⋆.
MatrixF coset_representative(const CosetShape& shape, long s, long t, long long star,
                             const PrecisionContext& ctx);

} // namespace afl3
