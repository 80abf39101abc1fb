#pragma once

#include "afl3/scalar.hpp"

namespace afl3 {

/// An element of F = F₀(τ), τ² = ε, written re + im·τ.
///
/// F/F₀ is unramified, so v(τ) = 0 and v(x) = min(v(re), v(im)).
/// Conjugation flips the sign of the τ-component; norm and trace are
/// conj-products and conj-sums landing in F₀.
class QuadExtScalar {
public:
    QuadExtScalar() = default;
    QuadExtScalar(PadicScalar re, PadicScalar im, uint64_t eps)
        : re_(std::move(re)), im_(std::move(im)), eps_(eps) {}

    static QuadExtScalar zero(const PrecisionContext& ctx) {
        return {PadicScalar::zero(ctx), PadicScalar::zero(ctx), ctx.eps()};
    }
    static QuadExtScalar one(const PrecisionContext& ctx) {
        return {PadicScalar::from_integer(ctx, 1), PadicScalar::zero(ctx), ctx.eps()};
    }
    static QuadExtScalar from_integer(const PrecisionContext& ctx, long long n) {
        return {PadicScalar::from_integer(ctx, n), PadicScalar::zero(ctx), ctx.eps()};
    }
    static QuadExtScalar from_padic(const PrecisionContext& ctx, PadicScalar x) {
        return {std::move(x), PadicScalar::zero(ctx), ctx.eps()};
    }
    static QuadExtScalar tau(const PrecisionContext& ctx) {
        return {PadicScalar::zero(ctx), PadicScalar::from_integer(ctx, 1), ctx.eps()};
    }
    /// π^k as an element of F.
    static QuadExtScalar uniformizer_pow(const PrecisionContext& ctx, long k) {
        return {PadicScalar::uniformizer_pow(ctx, k), PadicScalar::zero(ctx), ctx.eps()};
    }

    const PadicScalar& re() const { return re_; }
    const PadicScalar& im() const { return im_; }
    uint64_t eps() const { return eps_; }
    uint64_t p() const { return re_.p(); }
    bool is_null() const { return re_.is_null(); }

    QuadExtScalar operator+(const QuadExtScalar& o) const {
        require_compatible(o);
        return {re_ + o.re_, im_ + o.im_, eps_};
    }
    QuadExtScalar operator-() const { return {-re_, -im_, eps_}; }
    QuadExtScalar operator-(const QuadExtScalar& o) const { return *this + (-o); }

    /// (a + bτ)(c + dτ) = (ac + ε·bd) + (ad + bc)τ.
    QuadExtScalar operator*(const QuadExtScalar& o) const;
    QuadExtScalar inverse() const;
    QuadExtScalar operator/(const QuadExtScalar& o) const { return *this * o.inverse(); }
    QuadExtScalar shifted(long k) const { return {re_.shifted(k), im_.shifted(k), eps_}; }

    QuadExtScalar conj() const { return {re_, -im_, eps_}; }
    /// x + conj(x) = 2·re ∈ F₀.
    PadicScalar trace() const { return re_ + re_; }
    /// x·conj(x) = re² − ε·im² ∈ F₀.
    PadicScalar norm() const;

    Valuation valuation() const { return Valuation::min_of(re_.valuation(), im_.valuation()); }
    long exact_valuation() const { return valuation().exact_or_throw(); }
    bool is_exact_zero() const { return re_.is_exact_zero() && im_.is_exact_zero(); }
    bool is_zero_at_precision() const {
        return re_.is_zero_at_precision() && im_.is_zero_at_precision();
    }
    /// True if some component has a known nonzero digit.
    bool known_nonzero() const { return re_.known_nonzero() || im_.known_nonzero(); }
    /// Decides x ≠ 0; throws when the known digits cannot decide.
    bool decide_nonzero() const;

    bool is_integral() const;
    bool in_base_field() const;   // im = 0 at working precision
    bool in_tau_line() const;     // re = 0 at working precision
    bool eq(const QuadExtScalar& o) const;

    std::string str() const { return re_.str() + " + (" + im_.str() + ")*tau"; }

private:
    void require_compatible(const QuadExtScalar& o) const {
        if (is_null() || o.is_null())
            throw bad_parameter("arithmetic on a default-constructed scalar");
        if (eps_ != o.eps_ || re_.p() != o.re_.p())
            throw bad_parameter("mixing scalars from different quadratic extensions");
    }

    PadicScalar re_, im_;
    uint64_t eps_ = 0;
};

/// η on F^×: (−1)^{v(x)}; throws eta_of_zero / precision_exhausted.
int eta_ext(const QuadExtScalar& x);

} // namespace afl3
