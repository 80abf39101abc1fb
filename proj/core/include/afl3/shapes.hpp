#pragma once

#include <optional>

#include "afl3/errors.hpp"

namespace afl3 {

/// Parity of v(j) for the n = 3 family: v(j) = 2m+1 (odd) or 2m (even).
enum class Parity { odd, even };

/// ε offset in the determinant-valuation weight: 2 (odd), 0 (even).
inline long parity_offset(Parity p) { return p == Parity::odd ? 2 : 0; }

/// Integer data controlling both sides of the identity for one instance:
/// q, the parity and m, and the valuations vb = v(b), va = v(a)
/// (va empty encodes a = 0, i.e. k = ∞).
///
/// Derived: l = 2·vb + 1 (odd), k = 2·va (even), v(j) = 2m + parity.
struct InstanceShape {
    long q = 0;
    Parity parity = Parity::odd;
    long m = 0;
    long vb = 0;
    std::optional<long> va;

    long l() const { return 2 * vb + 1; }
    std::optional<long> k() const {
        return va ? std::optional<long>(2 * *va) : std::nullopt;
    }
    long vj() const { return 2 * m + (parity == Parity::odd ? 1 : 0); }
    long eps() const { return parity_offset(parity); }
    /// l < k, with k = ∞ counted as larger than everything.
    bool low_b_valuation() const { return !va || l() < 2 * *va; }
    bool integral() const { return m >= 0 && vb >= 0 && (!va || *va >= 0); }
};

inline long long ipow(long long base, long e) {
    if (e < 0) throw bad_parameter("negative exponent");
    long long r = 1;
    for (long i = 0; i < e; ++i) {
        if (r > (1LL << 62) / (base > 0 ? base : 1))
            throw error("integer overflow in power");
        r *= base;
    }
    return r;
}

/// 1 + q + … + q^n (0 when n < 0).
inline long long geom_sum(long long q, long n) {
    long long r = 0;
    for (long i = 0; i <= n; ++i) r += ipow(q, i);
    return r;
}

/// Coset enumeration window: s ∈ [s_lo, s_hi], t ∈ [0, t_hi].
struct Window {
    long s_lo;
    long s_hi;
    long t_hi;
};

} // namespace afl3
