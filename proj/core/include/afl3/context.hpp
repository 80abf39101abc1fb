#pragma once

#include <cstdint>

#include "afl3/errors.hpp"

namespace afl3 {

/// Ambient arithmetic data for F₀ = ℚ_p and its unramified quadratic
/// extension F = F₀(τ), τ² = ε.
///
/// All freshly created scalars are known to relative precision `N`
/// (i.e. modulo π^{v+N} where v is their valuation); precision then
/// propagates through arithmetic with worst-case tracking.
///
/// `eps` is a unit non-square modulo p, so τ = √ε is a trace-zero unit
/// generating F over F₀. By default the smallest positive non-residue
/// is chosen, which makes every run reproducible.
class PrecisionContext {
public:
    PrecisionContext(uint64_t p, long working_precision)
        : PrecisionContext(p, working_precision, smallest_nonresidue(p)) {}

    PrecisionContext(uint64_t p, long working_precision, uint64_t eps)
        : p_(p), n_(working_precision), eps_(eps) {
        if (p < 5 || !is_prime(p))
            throw bad_parameter("residue characteristic must be a prime >= 5");
        if (n_ < 1)
            throw bad_parameter("working precision must be >= 1");
        if (eps_ % p_ == 0 || is_residue(eps_ % p_, p_))
            throw bad_parameter("eps must be a unit non-square modulo p");
    }

    uint64_t p() const { return p_; }
    /// Residue field cardinality; q = p since F₀ = ℚ_p.
    uint64_t q() const { return p_; }
    long precision() const { return n_; }
    uint64_t eps() const { return eps_; }

    PrecisionContext with_precision(long n) const { return {p_, n, eps_}; }

    static bool is_prime(uint64_t n) {
        if (n < 2) return false;
        for (uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    /// Euler criterion; p odd prime, a a unit mod p.
    static bool is_residue(uint64_t a, uint64_t p) {
        uint64_t r = 1, base = a % p, e = (p - 1) / 2;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r == 1;
    }

    static uint64_t smallest_nonresidue(uint64_t p) {
        for (uint64_t a = 2; a < p; ++a)
            if (!is_residue(a, p)) return a;
        throw bad_parameter("no quadratic non-residue found (p not an odd prime?)");
    }

private:
    uint64_t p_;
    long n_;
    uint64_t eps_;
};

} // namespace afl3
