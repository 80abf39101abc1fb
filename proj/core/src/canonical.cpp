#include "afl3/canonical.hpp"

#include "afl3/lengths.hpp"

namespace afl3 {

InstanceShape CanonicalInstance::shape() const {
    InstanceShape s;
    s.q = static_cast<long>(ctx.q());
    s.parity = parity;
    s.m = m;
    Valuation vb = b.valuation();
    s.vb = vb.exact_or_throw();
    if (a.is_exact_zero()) {
        s.va = std::nullopt;
    } else {
        s.va = a.valuation().exact_or_throw();
    }
    return s;
}

CanonicalInstance make_instance(const PrecisionContext& ctx, Parity parity, long m,
                                std::optional<long> va, long vb, uint64_t seed) {
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + 0xabcdef);
    QuadExtScalar a = QuadExtScalar::zero(ctx);
    if (va) {
        PadicScalar im = sample_padic_with_valuation(ctx, *va, rng);
        a = QuadExtScalar(PadicScalar::zero(ctx), im, ctx.eps());
    }
    // b needs only v(b) = vb; its unit part is free (including a τ-component)
    QuadExtScalar b = sample_quadext_with_valuation(ctx, vb, rng);
    return make_instance_from(ctx, parity, m, std::move(a), std::move(b));
}

CanonicalInstance make_instance_from(const PrecisionContext& ctx, Parity parity, long m,
                                     QuadExtScalar a, QuadExtScalar b) {
    if (b.is_zero_at_precision())
        throw degenerate_params("b = 0 is degenerate (not regular semisimple)");
    if (!a.is_exact_zero() && !a.in_tau_line())
        throw bad_parameter("a must lie on the τ line");
    return {ctx, parity, m, std::move(a), std::move(b)};
}

MatrixF build_x_general(const PrecisionContext& ctx, Parity parity, long m,
                        const QuadExtScalar& a1, const QuadExtScalar& a2, const QuadExtScalar& d,
                        const QuadExtScalar& b) {
    MatrixF x = MatrixF::zero(ctx, 3);
    x.at(0, 0) = a1;
    x.at(1, 1) = a2;
    x.at(2, 2) = d;
    x.at(0, 1) = b;
    x.at(1, 0) = b.conj().shifted(1); // π·conj(b)
    if (parity == Parity::odd) {
        x.at(0, 2) = QuadExtScalar::uniformizer_pow(ctx, m);
        x.at(2, 0) = QuadExtScalar::uniformizer_pow(ctx, m + 1);
    } else {
        x.at(1, 2) = QuadExtScalar::uniformizer_pow(ctx, m);
        x.at(2, 1) = -QuadExtScalar::uniformizer_pow(ctx, m);
    }
    return x;
}

MatrixF build_match_y_general(const PrecisionContext& ctx, Parity parity, long m,
                              const QuadExtScalar& a1, const QuadExtScalar& a2,
                              const QuadExtScalar& d, const QuadExtScalar& b) {
    MatrixF y = MatrixF::zero(ctx, 3);
    y.at(0, 0) = a1;
    y.at(1, 1) = a2;
    y.at(2, 2) = d;
    QuadExtScalar tau = QuadExtScalar::tau(ctx);
    QuadExtScalar tau_inv = tau.inverse();
    QuadExtScalar nb = QuadExtScalar::from_padic(ctx, b.norm());
    if (parity == Parity::odd) {
        // conjugate of x by diag(τ, π^{-1}·conj(b)^{-1}, 1)
        y.at(0, 1) = tau * nb.shifted(1);             // τ·π·N(b)
        y.at(1, 0) = tau_inv;                         // τ^{-1}
        y.at(0, 2) = tau.shifted(m);                  // τ·π^m
        y.at(2, 0) = tau_inv.shifted(m + 1);          // τ^{-1}·π^{m+1}
    } else {
        // conjugate of x by diag(b^{-1}, −τ, 1)
        y.at(0, 1) = -tau_inv;
        y.at(1, 0) = -(tau * nb.shifted(1));
        y.at(1, 2) = -tau.shifted(m);
        y.at(2, 1) = tau_inv.shifted(m);
    }
    return y;
}

MatrixF build_x(const CanonicalInstance& inst) {
    return build_x_general(inst.ctx, inst.parity, inst.m, -inst.a, inst.a,
                           QuadExtScalar::zero(inst.ctx), inst.b);
}

MatrixF build_match_y(const CanonicalInstance& inst) {
    return build_match_y_general(inst.ctx, inst.parity, inst.m, -inst.a, inst.a,
                                 QuadExtScalar::zero(inst.ctx), inst.b);
}

long long alpha_closed(const InstanceShape& shape, long s, long t) {
    long vj = shape.vj();
    if (s < 0 || s > vj || t < 0) return 0;
    long long q = shape.q;
    long l = shape.l();
    if (shape.low_b_valuation()) {
        // l < k: the completed square must fall into π^t, which needs t ≤ l
        if (t > l) return 0;
        return ipow(q, std::min(t / 2, s));
    }
    long k = *shape.k();
    if (t <= k) return ipow(q, std::min(t / 2, s));
    if (t <= l) {
        // square-one classes: the one near 1 always counts, the one near −1
        // only when its valuation k/2 clears the coset constraint
        long long r = ipow(q, std::min(k / 2, s));
        if (t <= s + k / 2) r += ipow(q, k / 2);
        return r;
    }
    long long r = 0;
    if (t <= s + k / 2) r += ipow(q, k / 2);     // class near −1
    if (t <= s + l - k / 2) r += ipow(q, k / 2); // class near +1, valuation l − k/2
    return r;
}

long long sigma_direct(const InstanceShape& shape, long s) {
    if (s < 0 || s > shape.vj())
        throw bad_parameter("sigma_direct needs 0 <= s <= v(j)");
    long t_max = shape.l() + s + 2; // α vanishes beyond max(l, s + l − k/2)
    long long acc = 0;
    for (long t = 0; t <= t_max; ++t) {
        long long alpha = alpha_closed(shape, s, t);
        if (alpha == 0) continue;
        long long weight = 2 * shape.m - 2 * s + t + shape.eps();
        acc += (t % 2 == 0 ? -1 : 1) * weight * alpha;
    }
    return acc;
}

long long sigma_low_b_s0_alt(long l) { return (l - 1) / 2; }

namespace {

/// σ(s) for the l < k family of α values (also the A+B part of the k < l
/// case when s ≤ k/2): Σ_{t=0}^{l} (−1)^{t+1}(2m−2s+t+ε)·q^{min(⌊t/2⌋, s)}.
long long sigma_low_b_closed(long long q, long l, long s) {
    if (l < 2 * s) return geom_sum(q, l / 2);
    return geom_sum(q, s - 1) + ((l - 2 * s + 1) / 2) * ipow(q, s);
}

} // namespace

long long sigma_pair_low_b_closed(const InstanceShape& shape, long s) {
    if (!shape.low_b_valuation() && 2 * s > *shape.k())
        throw wrong_case("pair closed form applies to the l < k family");
    long long q = shape.q;
    long l = shape.l();
    if (s == 0) return sigma_low_b_closed(q, l, 0);
    if (l < 2 * s) return 2 * geom_sum(q, l / 2);
    return 2 * geom_sum(q, s - 1) +
           ((l + 1) / 2 - static_cast<long long>(s)) * ramification_index(q, s);
}

long long high_b_a_closed(const InstanceShape& shape, long s) {
    if (shape.low_b_valuation()) throw wrong_case("A closed form needs k < l");
    long k = *shape.k();
    if (2 * s <= k) throw wrong_case("A closed form needs k/2 < s");
    long long q = shape.q;
    return geom_sum(q, k / 2 - 1) -
           (2 * shape.m - 2 * s + shape.eps() + k) * ipow(q, k / 2);
}

long long high_b_c_closed(const InstanceShape& shape, long s) {
    if (shape.low_b_valuation()) throw wrong_case("C closed form needs k < l");
    long k = *shape.k();
    long long q = shape.q;
    long long qk2 = ipow(q, k / 2);
    long half_k = k / 2;
    if ((s - half_k) % 2 != 0)
        return (2 * shape.m - 2 * s + k + 1 + shape.eps()) * qk2 + ((s - half_k - 1) / 2) * qk2;
    return -((s - half_k) / 2) * qk2;
}

long long high_b_e_closed(const InstanceShape& shape, long s) {
    if (shape.low_b_valuation()) throw wrong_case("E closed form needs k < l");
    long k = *shape.k();
    long l = shape.l();
    long long q = shape.q;
    long long qk2 = ipow(q, k / 2);
    long half_k = k / 2;
    if ((s - half_k) % 2 != 0) return -((l + s - 3 * half_k) / 2) * qk2;
    return (2 * shape.m - 2 * s + k + 1 + shape.eps()) * qk2 + ((l + s - 3 * half_k - 1) / 2) * qk2;
}

CaseBParts high_b_parts_direct(const InstanceShape& shape, long s) {
    if (shape.low_b_valuation()) throw wrong_case("the four-part split needs k < l");
    long k = *shape.k();
    long l = shape.l();
    long long q = shape.q;
    auto weight = [&](long t) {
        long long w = 2 * shape.m - 2 * s + t + shape.eps();
        return (t % 2 == 0 ? -1 : 1) * w;
    };
    CaseBParts parts{0, 0, 0, 0, 0};
    for (long t = 0; t <= k; ++t) parts.a_part += weight(t) * ipow(q, std::min(t / 2, s));
    for (long t = k + 1; t <= l; ++t) parts.b_part += weight(t) * ipow(q, std::min(k / 2, s));
    for (long t = k + 1; t <= s + k / 2; ++t) parts.c_part += weight(t) * ipow(q, k / 2);
    for (long t = l + 1; t <= l + s - k / 2; ++t) parts.d_part += weight(t) * ipow(q, k / 2);
    parts.e_part = parts.b_part + parts.d_part;
    return parts;
}

long long sigma_closed(const InstanceShape& shape, long s) {
    if (s < 0 || s > shape.vj())
        throw bad_parameter("sigma_closed needs 0 <= s <= v(j)");
    long long q = shape.q;
    long l = shape.l();
    if (shape.low_b_valuation()) return sigma_low_b_closed(q, l, s);
    long k = *shape.k();
    if (2 * s <= k) return sigma_low_b_closed(q, l, s); // C and D are empty
    return high_b_a_closed(shape, s) + high_b_c_closed(shape, s) + high_b_e_closed(shape, s);
}

long long analytic_side_closed(const InstanceShape& shape) {
    if (!shape.integral()) return 0;
    long long acc = 0;
    for (long s = 0; s <= shape.vj(); ++s) acc += sigma_closed(shape, s);
    return acc;
}

long long analytic_side_oracle(const CanonicalInstance& inst, const OracleOptions& opt) {
    MatrixF y = build_match_y(inst);
    Window w = default_window(inst.shape());
    OracleResult r = enumerate_and_tally(y, Side::lie, inst.coset_shape(), w, inst.ctx, opt);
    return r.tally.derived_value();
}

RawReduction reduce_raw(const PrecisionContext& ctx, const MatrixF& x) {
    if (x.n() != 3) throw bad_parameter("raw reduction is for 3x3 inputs");
    if (!membership(x, SpaceKind::LieU, ctx))
        throw bad_parameter("raw input is not in the Lie algebra of the unitary group");
    if (!is_regular_semisimple(x, ctx))
        throw not_regular_semisimple("raw input is not regular semisimple");

    bool j1_zero = x.at(0, 2).is_zero_at_precision();
    bool j2_zero = x.at(1, 2).is_zero_at_precision();
    if (j1_zero == j2_zero)
        throw error("raw input j-column is not in normalized shape; "
                    "isometry normalization is out of scope");
    RawReduction out{j2_zero ? Parity::odd : Parity::even, 0, false,
                     QuadExtScalar::zero(ctx), x.at(0, 1),
                     x.at(0, 0), x.at(1, 1), x.at(2, 2)};
    const QuadExtScalar& j_entry = j2_zero ? x.at(0, 2) : x.at(1, 2);
    out.m = j_entry.exact_valuation();

    bool entries_integral = x.is_integral();
    // the trace may sit one digit lower than the entries after halving
    QuadExtScalar half_trace =
        (out.a1 + out.a2) * QuadExtScalar::from_padic(ctx, PadicScalar::from_integer(ctx, 2)
                                                               .inverse());
    out.integral = entries_integral;
    if (!out.integral) return out;

    // subtract the diagonal τ-integral pair (µ, µ, d): d ↦ 0, trace ↦ 0
    out.a = out.a2 - half_trace;
    out.a1 = -out.a;
    out.a2 = out.a;
    out.d = QuadExtScalar::zero(ctx);
    return out;
}

} // namespace afl3
