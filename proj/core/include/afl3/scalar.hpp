#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <string>

#include "afl3/context.hpp"
#include "afl3/errors.hpp"

namespace afl3 {

/// Result of a valuation query. Besides exact answers there are two
/// distinguished states: +∞ for the exact zero, and "at least P" for a
/// value all of whose known digits vanish. Indeterminacy is an encoded
/// result here, not an error; callers that need an exact answer use
/// `exact_or_throw`.
class Valuation {
public:
    enum class Kind { exact, at_least, infinite };

    static Valuation exactly(long v) { return {Kind::exact, v}; }
    static Valuation at_least(long v) { return {Kind::at_least, v}; }
    static Valuation infinite() { return {Kind::infinite, 0}; }

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ == Kind::exact; }
    bool is_infinite() const { return kind_ == Kind::infinite; }
    /// Known lower bound (the exact value when exact; LONG_MAX when infinite).
    long lower_bound() const { return kind_ == Kind::infinite ? LONG_MAX : v_; }

    long exact_or_throw() const {
        if (kind_ != Kind::exact)
            throw precision_exhausted("valuation not determined at working precision");
        return v_;
    }

    Valuation operator+(const Valuation& o) const {
        if (is_infinite() || o.is_infinite()) return infinite();
        if (is_exact() && o.is_exact()) return exactly(v_ + o.v_);
        return at_least(lower_bound() + o.lower_bound());
    }

    /// min(v(x), v(y)) as known for a sum of independent components.
    static Valuation min_of(const Valuation& a, const Valuation& b) {
        if (a.is_infinite()) return b;
        if (b.is_infinite()) return a;
        if (a.is_exact() && (b.is_exact() || a.v_ < b.v_))
            return b.is_exact() ? exactly(std::min(a.v_, b.v_)) : exactly(a.v_);
        if (b.is_exact() && b.v_ < a.v_) return exactly(b.v_);
        return at_least(std::min(a.lower_bound(), b.lower_bound()));
    }

private:
    Valuation(Kind k, long v) : kind_(k), v_(v) {}
    Kind kind_;
    long v_;
};

/// An element of F₀ = ℚ_p known to finite precision.
///
/// Representation is capped-relative: a regular value is π^v·u with the
/// unit part u known modulo p^rel (rel ≥ 1), i.e. the value is known
/// modulo π^{v+rel}. Two special states exist: the exact zero, and the
/// indeterminate zero (every known digit vanishes; the value lies in
/// π^P·𝒪 for the recorded bound P).
///
/// Arithmetic tracks worst-case precision. Queries whose answer is not
/// determined by the known digits throw `precision_exhausted` instead of
/// guessing.
class PadicScalar {
public:
    PadicScalar() = default; // null scalar; any arithmetic on it throws

    static PadicScalar zero(const PrecisionContext& ctx);
    static PadicScalar from_integer(const PrecisionContext& ctx, long long n);
    static PadicScalar from_mpz(const PrecisionContext& ctx, const mpz_class& n);
    /// π^val · unit, with the unit part taken modulo p^N (must be a unit).
    static PadicScalar from_unit_valuation(const PrecisionContext& ctx, const mpz_class& unit,
                                           long val);
    static PadicScalar uniformizer_pow(const PrecisionContext& ctx, long k);

    bool is_null() const { return p_ == 0; }
    uint64_t p() const { return p_; }

    PadicScalar operator+(const PadicScalar& o) const;
    PadicScalar operator-() const;
    PadicScalar operator-(const PadicScalar& o) const { return *this + (-o); }
    PadicScalar operator*(const PadicScalar& o) const;
    PadicScalar inverse() const;
    PadicScalar operator/(const PadicScalar& o) const { return *this * o.inverse(); }
    /// Multiplication by π^k (exact).
    PadicScalar shifted(long k) const;
    /// Multiplication by an exact integer (no precision loss beyond its valuation).
    PadicScalar times_integer(long long n) const;

    Valuation valuation() const;
    bool is_exact_zero() const { return st_ == St::exact_zero; }
    /// Exact zero, or indeterminate zero: indistinguishable from 0 at precision.
    bool is_zero_at_precision() const { return st_ != St::regular; }
    bool known_nonzero() const { return st_ == St::regular; }

    /// v(x) ≥ 0, decided; throws when the known digits cannot decide.
    bool is_integral() const;
    bool is_unit() const;
    long exact_valuation() const { return valuation().exact_or_throw(); }

    /// η(x) = (−1)^{v(x)}.
    int eta() const;

    /// Equality at working precision: the difference has no known nonzero
    /// digit and agreement is established at least modulo π. Throws when
    /// undetermined.
    bool eq(const PadicScalar& o) const;
    /// x = 0 at working precision (same decision rule as eq).
    bool eq_zero() const;

    /// The value modulo p^k (k ≥ 0), for an integral value determined to
    /// at least that precision. Result in [0, p^k).
    mpz_class residue(long k) const;
    uint64_t residue_u64(long k) const;

    /// Value known modulo π^{abs_precision}. LONG_MAX for the exact zero.
    long abs_precision() const;
    long rel_precision() const { return st_ == St::regular ? rel_ : 0; }

    std::string str() const;

private:
    enum class St : uint8_t { exact_zero, regular, indet };

    static mpz_class pow_p(uint64_t p, long k);
    void require_compatible(const PadicScalar& o) const;
    static PadicScalar make_regular(uint64_t p, long val, long rel, mpz_class unit);
    static PadicScalar make_indet(uint64_t p, long bound);
    static PadicScalar make_exact_zero(uint64_t p);

    uint64_t p_ = 0;
    St st_ = St::exact_zero;
    long val_ = 0;    // regular: exact valuation; indet: value ∈ π^{val_}·𝒪
    long rel_ = 0;    // regular: number of known unit-part digits (≥ 1)
    mpz_class unit_;  // regular: in [1, p^rel), not divisible by p
};

/// η on F₀^×; throws eta_of_zero / precision_exhausted.
int eta(const PadicScalar& x);

} // namespace afl3
