#pragma once

#include <vector>

#include "afl3/quadext.hpp"
#include "afl3/sampling.hpp"

namespace afl3 {

/// A square matrix over F. Value type; all operations are pure.
class MatrixF {
public:
    MatrixF(int n, const QuadExtScalar& fill) : n_(n), e_(static_cast<size_t>(n) * n, fill) {}

    static MatrixF zero(const PrecisionContext& ctx, int n) {
        return MatrixF(n, QuadExtScalar::zero(ctx));
    }
    static MatrixF identity(const PrecisionContext& ctx, int n);
    static MatrixF scalar_matrix(const PrecisionContext& ctx, int n, const QuadExtScalar& c);

    int n() const { return n_; }
    QuadExtScalar& at(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
    const QuadExtScalar& at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

    MatrixF operator+(const MatrixF& o) const;
    MatrixF operator-(const MatrixF& o) const;
    MatrixF operator-() const;
    MatrixF operator*(const MatrixF& o) const;
    MatrixF scaled(const QuadExtScalar& c) const;
    MatrixF shifted(long k) const; // times π^k

    MatrixF conjugate() const;
    MatrixF transpose() const;
    MatrixF conj_transpose() const;

    QuadExtScalar trace() const;
    QuadExtScalar det() const;
    /// Adjugate-based inverse; throws on_divisor when det is zero or undetermined.
    MatrixF inverse() const;
    MatrixF pow(unsigned k) const;

    /// Monic characteristic polynomial det(T − x); coefficients c[0..n], c[n] = 1.
    std::vector<QuadExtScalar> charpoly(const PrecisionContext& ctx) const;
    /// det(t − x), evaluated via Horner on the characteristic polynomial.
    QuadExtScalar charpoly_at(const QuadExtScalar& t, const PrecisionContext& ctx) const;
    bool has_integral_charpoly(const PrecisionContext& ctx) const;

    std::vector<QuadExtScalar> apply(const std::vector<QuadExtScalar>& v) const;        // x·v
    std::vector<QuadExtScalar> apply_left(const std::vector<QuadExtScalar>& w) const;   // wᵗ·x

    bool is_integral() const;
    bool eq(const MatrixF& o) const;

private:
    int n_;
    std::vector<QuadExtScalar> e_;
};

/// The hermitian form J = diag(−π, 1, …, 1).
MatrixF hermitian_form(const PrecisionContext& ctx, int n);

/// diag(h, 1, …, 1) of size n (h is k×k, k ≤ n).
MatrixF embed_upper_left(const PrecisionContext& ctx, const MatrixF& h, int n);

enum class SpaceKind {
    U,    // unitary group: x*·J·x = J
    LieU, // its Lie algebra: x*·J + J·x = 0
    S,    // symmetric space: x·conj(x) = 1
    LieS  // its tangent space: x + conj(x) = 0
};

/// Exact membership at working precision; throws precision_exhausted when
/// an entry comparison is undetermined.
bool membership(const MatrixF& x, SpaceKind space, const PrecisionContext& ctx);

/// Columns (e, xe, …, x^{n−1}e), e the last standard basis vector.
MatrixF moment_matrix_cols(const MatrixF& x, const PrecisionContext& ctx);
/// Rows (eᵗ; eᵗx; …; eᵗx^{n−1}).
MatrixF moment_matrix_rows(const MatrixF& x, const PrecisionContext& ctx);

/// Both moment matrices invertible (the operational criterion for trivial
/// GL_{n−1}(F)-stabilizer with closed orbit).
bool is_regular_semisimple(const MatrixF& x, const PrecisionContext& ctx);

/// η(det(x^i e)_{i=0..n−1}) ∈ {±1}; the same formula serves Ω on the
/// symmetric space and ω on its tangent space. Throws
/// not_regular_semisimple when the precondition fails.
int transfer_factor(const MatrixF& x, const PrecisionContext& ctx);

/// GL_{n−1}(F)-conjugation invariants separating regular semisimple orbits:
/// the characteristic polynomial plus the corner moments (x^i)_{nn},
/// i = 1..2n−2.
struct MatchingInvariants {
    std::vector<QuadExtScalar> charpoly;
    std::vector<QuadExtScalar> corner_moments;
};

MatchingInvariants matching_invariants(const MatrixF& x, const PrecisionContext& ctx);
bool matches(const MatrixF& x, const MatrixF& y, const PrecisionContext& ctx);

/// Linear-algebra helper: solve A·u = b over F by Gaussian elimination with
/// min-valuation pivoting. A is m×k (m ≥ k). Returns the solution with free
/// coordinates set to zero; `unique` reports full column rank. Throws
/// error("inconsistent system") when b is outside the column span.
struct LinearSolution {
    std::vector<QuadExtScalar> coords;
    bool unique;
};
LinearSolution solve_linear(const std::vector<std::vector<QuadExtScalar>>& a,
                            const std::vector<QuadExtScalar>& b, const PrecisionContext& ctx);

// --- randomized matrix inputs for property tests and the check suites ---

/// Random integral matrix over F.
MatrixF sample_matrix_integral(const PrecisionContext& ctx, int n, Rng& rng);
/// Random element of 𝔰(𝒪) = τ·M_n(𝒪_{F₀}).
MatrixF sample_lie_s_integral(const PrecisionContext& ctx, int n, Rng& rng);
/// Random integral element of 𝔲(F₀) for J = diag(−π, 1, …, 1).
MatrixF sample_lie_u_integral(const PrecisionContext& ctx, int n, Rng& rng);
/// Random element of GL_n(𝒪) (integral, unit determinant).
MatrixF sample_gl_integral(const PrecisionContext& ctx, int n, Rng& rng);
/// Random element of GL_n(F): GL_n(𝒪)·diag(π^{e_i})·GL_n(𝒪).
MatrixF sample_gl_f(const PrecisionContext& ctx, int n, Rng& rng);
/// Same with entries in F₀.
MatrixF sample_gl_f0_integral(const PrecisionContext& ctx, int n, Rng& rng);
MatrixF sample_gl_f0(const PrecisionContext& ctx, int n, Rng& rng);

} // namespace afl3
