#include "afl3/lengths.hpp"

namespace afl3 {

long long a_of(long long q, long k) {
    if (k < 0) throw invalid_level("a(k) needs k >= 0");
    // 2(1 + … + q^{k−1}) + q^k
    return 2 * geom_sum(q, k - 1) + ipow(q, k);
}

long long ramification_index(long long q, long s) {
    if (s < 0) throw invalid_level("ramification index needs s >= 0");
    if (s == 0) return 1;
    return ipow(q, s) + ipow(q, s - 1);
}

long long gk_length(long long q, long s, long level) {
    if (level < 0) throw invalid_level("negative endomorphism level");
    if (s < 0) throw invalid_level("negative divisor level");
    if (level % 2 == 0) {
        if (level <= 2 * s) return a_of(q, level / 2);
        throw invalid_level("even level above 2s is outside the supported branches");
    }
    if (level <= 2 * s) return a_of(q, (level - 1) / 2) + ipow(q, (level - 1) / 2);
    // level ≥ 2s−1, level odd
    if (s == 0) return (level + 1) / 2; // a(−1) + q^{−1} := 0, e_0 := 1
    return a_of(q, s - 1) + ipow(q, s - 1) +
           (static_cast<long long>((level + 1) / 2) - s) * ramification_index(q, s);
}

long long zs_length(const InstanceShape& shape, long s) {
    long vjv = shape.vj();
    if (s < 0 || s > vjv || ((vjv - s) % 2 != 0))
        throw bad_parameter("zs_length needs 0 <= s <= v(j) with s = v(j) mod 2");
    long l = shape.l();
    std::optional<long> k = shape.k();
    bool use_l = !k || l < *k || 2 * s <= *k;
    return gk_length(shape.q, s, use_l ? l : *k);
}

LengthBreakdown geometric_side(const InstanceShape& shape) {
    LengthBreakdown out;
    if (!shape.integral()) return out;
    long vjv = shape.vj();
    for (long s = vjv % 2; s <= vjv; s += 2) {
        long long len = zs_length(shape, s);
        out.per_level[s] = len;
        out.total += len;
    }
    return out;
}

namespace {

/// x + ϖ·y with x, y ∈ F; ϖ² = π and ϖ·f = conj(f)·ϖ.
struct QuatElem {
    QuadExtScalar x, y;
    QuatElem operator+(const QuatElem& o) const { return {x + o.x, y + o.y}; }
    QuatElem operator*(const QuatElem& o) const {
        return {x * o.x + (y.conj() * o.y).shifted(1), x.conj() * o.y + y * o.x};
    }
    bool eq(const QuatElem& o) const { return x.eq(o.x) && y.eq(o.y); }
};

} // namespace

bool quasi_diagonalization_check(const QuadExtScalar& a, const QuadExtScalar& b,
                                 const PrecisionContext& ctx) {
    QuadExtScalar zero = QuadExtScalar::zero(ctx);
    QuadExtScalar tau = QuadExtScalar::tau(ctx);
    QuadExtScalar half =
        QuadExtScalar::from_padic(ctx, PadicScalar::from_integer(ctx, 2).inverse());
    QuadExtScalar half_tau_inv = half * tau.inverse();

    auto f = [&](const QuadExtScalar& v) { return QuatElem{v, zero}; };
    QuatElem m[2][2] = {{f(QuadExtScalar::one(ctx)), f(tau)},
                        {f(QuadExtScalar::one(ctx)), f(-tau)}};
    QuatElem minv[2][2] = {{f(half), f(half)}, {f(half_tau_inv), f(-half_tau_inv)}};
    QuatElem z[2][2] = {{f(a), QuatElem{zero, b}}, {QuatElem{zero, b}, f(a)}};

    QuatElem zm[2][2] = {{z[0][0] * m[0][0] + z[0][1] * m[1][0],
                          z[0][0] * m[0][1] + z[0][1] * m[1][1]},
                         {z[1][0] * m[0][0] + z[1][1] * m[1][0],
                          z[1][0] * m[0][1] + z[1][1] * m[1][1]}};
    QuatElem res[2][2] = {{minv[0][0] * zm[0][0] + minv[0][1] * zm[1][0],
                           minv[0][0] * zm[0][1] + minv[0][1] * zm[1][1]},
                          {minv[1][0] * zm[0][0] + minv[1][1] * zm[1][0],
                           minv[1][0] * zm[0][1] + minv[1][1] * zm[1][1]}};

    QuatElem diag{a, b}; // a + ϖ·b
    QuatElem off{zero, zero};
    return res[0][0].eq(diag) && res[1][1].eq(diag) && res[0][1].eq(off) && res[1][0].eq(off);
}

} // namespace afl3
