#include "afl3/oracle.hpp"

#include <algorithm>
#include <array>
#include <optional>

namespace afl3 {

namespace {

mpz_class pow_p_mpz(uint64_t p, long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    return r;
}

/// p^t as long long, or nullopt when it exceeds the given bound.
std::optional<long long> pow_bounded(uint64_t p, long t, long long bound) {
    long long r = 1;
    for (long i = 0; i < t; ++i) {
        if (r > bound / static_cast<long long>(p)) return std::nullopt;
        r *= static_cast<long long>(p);
    }
    return r;
}

long vp_capped(const mpz_class& x, long cap, uint64_t p) {
    if (x == 0) return cap;
    mpz_class u;
    mpz_class pz(static_cast<unsigned long>(p));
    long v = static_cast<long>(mpz_remove(u.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
    return std::min(v, cap);
}

bool is_qr_mod_p(const mpz_class& u, uint64_t p) {
    mpz_class pz(static_cast<unsigned long>(p));
    return mpz_legendre(u.get_mpz_t(), pz.get_mpz_t()) == 1;
}

/// One divisibility condition on the representative ⋆:
/// a2·⋆² + a1·⋆ + a0 ≡ 0 (mod p^D), coefficients reduced mod p^D.
struct Congruence {
    mpz_class a2, a1, a0;
    long modexp; // D ≥ 1
};

/// Entry of the conjugated matrix as a quadratic polynomial in ⋆.
struct EntryQuad {
    QuadExtScalar c0, c1, c2;
};

std::array<EntryQuad, 9> symbolic_entries(const MatrixF& y, const CosetShape& shape, long s,
                                          long t, const PrecisionContext& ctx) {
    std::array<MatrixF, 3> conj = {MatrixF::zero(ctx, 3), MatrixF::zero(ctx, 3),
                                   MatrixF::zero(ctx, 3)};
    for (long long star = 0; star <= 2; ++star) {
        MatrixF h = coset_representative(shape, s, t, star, ctx);
        conj[static_cast<size_t>(star)] = h * y * h.inverse();
    }
    QuadExtScalar inv2 =
        QuadExtScalar::from_padic(ctx, PadicScalar::from_integer(ctx, 2).inverse());
    std::array<EntryQuad, 9> out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const QuadExtScalar& e0 = conj[0].at(i, j);
            const QuadExtScalar& e1 = conj[1].at(i, j);
            const QuadExtScalar& e2 = conj[2].at(i, j);
            QuadExtScalar c2 = (e0 + e2 - e1 - e1) * inv2;
            QuadExtScalar c1 = e1 - e0 - c2;
            out[static_cast<size_t>(3 * i + j)] = {e0, c1, c2};
        }
    return out;
}

struct CoeffInfo {
    bool integral;
    long val; // exact valuation when not integral
};

CoeffInfo coeff_info(const PadicScalar& c) {
    if (c.is_integral()) return {true, 0};
    return {false, c.exact_valuation()};
}

/// Extracted per-cell test: either a definite miss (some ⋆-free condition
/// fails) or a conjunction of congruences.
struct CellConditions {
    bool gate_failed = false;
    std::vector<Congruence> conds;
};

CellConditions extract_conditions(const std::array<EntryQuad, 9>& entries) {
    CellConditions out;
    for (const auto& e : entries) {
        const PadicScalar* comps[3][2] = {
            {&e.c0.re(), &e.c0.im()}, {&e.c1.re(), &e.c1.im()}, {&e.c2.re(), &e.c2.im()}};
        for (int part = 0; part < 2; ++part) {
            CoeffInfo i0 = coeff_info(*comps[0][part]);
            CoeffInfo i1 = coeff_info(*comps[1][part]);
            CoeffInfo i2 = coeff_info(*comps[2][part]);
            if (i1.integral && i2.integral) {
                if (i0.integral) continue; // component integral for every ⋆
                out.gate_failed = true;    // constant defect, no ⋆ can fix it
                return out;
            }
            long w = 0;
            if (!i1.integral) w = std::min(w, i1.val);
            if (!i2.integral) w = std::min(w, i2.val);
            if (!i0.integral && i0.val < w) {
                out.gate_failed = true; // constant term below every ⋆ term
                return out;
            }
            long d = -w;
            Congruence cg;
            cg.modexp = d;
            cg.a0 = comps[0][part]->shifted(d).residue(d);
            cg.a1 = comps[1][part]->shifted(d).residue(d);
            cg.a2 = comps[2][part]->shifted(d).residue(d);
            out.conds.push_back(std::move(cg));
        }
    }
    return out;
}

/// #w mod p^D with w² ≡ c (mod p^D); p odd.
long long count_square_roots(const mpz_class& c, long d, uint64_t p) {
    mpz_class pd = pow_p_mpz(p, d);
    mpz_class cc = ((c % pd) + pd) % pd;
    if (cc == 0) return ipow(static_cast<long long>(p), d / 2);
    long e = vp_capped(cc, d, p);
    if (e % 2 != 0) return 0;
    mpz_class u = cc / pow_p_mpz(p, e);
    if (!is_qr_mod_p(u, p)) return 0;
    return 2 * ipow(static_cast<long long>(p), e / 2);
}

/// #u mod p^M with F(u) ≡ 0 (mod p^D); F must be determined by u mod p^M.
long long count_congruence(mpz_class a2, mpz_class a1, mpz_class a0, long d, long m, uint64_t p) {
    if (d <= 0) return ipow(static_cast<long long>(p), m);
    long g = std::min({vp_capped(a2, d, p), vp_capped(a1, d, p), vp_capped(a0, d, p)});
    if (g >= d) return ipow(static_cast<long long>(p), m);
    mpz_class pg = pow_p_mpz(p, g);
    a2 /= pg;
    a1 /= pg;
    a0 /= pg;
    d -= g;
    mpz_class pd = pow_p_mpz(p, d);
    a2 = ((a2 % pd) + pd) % pd;
    a1 = ((a1 % pd) + pd) % pd;
    a0 = ((a0 % pd) + pd) % pd;
    auto lift_factor = [&]() {
        if (m < d)
            throw error("congruence modulus finer than the class resolution; "
                        "raise the enumeration threshold");
        return ipow(static_cast<long long>(p), m - d);
    };
    if (a2 % p != 0) {
        // complete the square: with B = a1/(2a2), (u+B)² ≡ B² − a0/a2
        mpz_class two_a2 = (2 * a2) % pd;
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), two_a2.get_mpz_t(), pd.get_mpz_t()) == 0)
            throw error("internal: non-invertible leading coefficient");
        mpz_class b = (a1 * inv) % pd;
        mpz_class c = ((b * b - 2 * a0 * inv) % pd + pd) % pd;
        long long nsq = count_square_roots(c, d, p);
        return nsq == 0 ? 0 : nsq * lift_factor();
    }
    if (a1 % p != 0) // simple Hensel root, unique mod p^D
        return lift_factor();
    return 0; // constant term is a unit: no solutions
}

/// Machine-word evaluator for one congruence in the brute-force loop.
struct FastCong {
    bool use_u64;
    uint64_t a2u, a1u, a0u, pdu;
    mpz_class a2z, a1z, a0z, pdz;

    FastCong(const Congruence& c, uint64_t p) {
        mpz_class pd = pow_p_mpz(p, c.modexp);
        a2z = ((c.a2 % pd) + pd) % pd;
        a1z = ((c.a1 % pd) + pd) % pd;
        a0z = ((c.a0 % pd) + pd) % pd;
        pdz = pd;
        use_u64 = pd.fits_ulong_p() && pd.get_ui() < (1ULL << 31);
        if (use_u64) {
            pdu = pd.get_ui();
            a2u = a2z.get_ui();
            a1u = a1z.get_ui();
            a0u = a0z.get_ui();
        } else {
            pdu = a2u = a1u = a0u = 0;
        }
    }

    bool holds(long long star) const {
        if (use_u64) {
            uint64_t s = static_cast<uint64_t>(star) % pdu;
            return ((a2u * s + a1u) % pdu * s + a0u) % pdu == 0;
        }
        mpz_class s(static_cast<long>(star));
        mpz_class v = ((a2z * s + a1z) * s + a0z) % pdz;
        return v == 0;
    }
};

long long brute_count(const std::vector<Congruence>& conds, uint64_t p, long long pt) {
    std::vector<FastCong> fast;
    fast.reserve(conds.size());
    for (const auto& c : conds) fast.emplace_back(c, p);
    long long count = 0;
    for (long long star = 0; star < pt; ++star) {
        bool ok = true;
        for (const auto& f : fast)
            if (!f.holds(star)) {
                ok = false;
                break;
            }
        if (ok) ++count;
    }
    return count;
}

long long analytic_count(const std::vector<Congruence>& conds, uint64_t p, long t) {
    // Fold affine conditions into a single coset ⋆ ≡ β (mod p^ρ), keep at
    // most one genuine quadratic, then count by completing the square.
    mpz_class beta = 0;
    long rho = 0;
    std::optional<Congruence> quad;
    for (const auto& c : conds) {
        if (c.modexp > t)
            throw error("per-entry condition not class-stable; raise the enumeration threshold");
        mpz_class pd = pow_p_mpz(p, c.modexp);
        if (c.a2 % pd != 0) {
            if (quad) throw error("multiple quadratic conditions; analytic counting unsupported");
            quad = c;
            continue;
        }
        long g = vp_capped(c.a1, c.modexp, p);
        if (g >= c.modexp) {
            if (c.a0 % pd != 0) return 0; // unsatisfiable constant condition
            continue;                     // vacuous
        }
        if (vp_capped(c.a0, c.modexp, p) < g) return 0;
        long rho_i = c.modexp - g;
        mpz_class pr = pow_p_mpz(p, rho_i);
        mpz_class pg = pow_p_mpz(p, g);
        mpz_class a1r = (c.a1 / pg) % pr;
        mpz_class a0r = (c.a0 / pg) % pr;
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), a1r.get_mpz_t(), pr.get_mpz_t()) == 0)
            throw error("internal: non-invertible affine coefficient");
        mpz_class beta_i = ((-a0r * inv) % pr + pr) % pr;
        if (rho_i <= rho) {
            mpz_class pri = pow_p_mpz(p, rho_i);
            if ((beta - beta_i) % pri != 0) return 0;
        } else {
            mpz_class prc = pow_p_mpz(p, rho);
            if ((beta_i - beta) % prc != 0) return 0;
            beta = beta_i;
            rho = rho_i;
        }
    }
    if (!quad) return ipow(static_cast<long long>(p), t - rho);
    // substitute ⋆ = β + p^ρ·u and count u mod p^{t−ρ}
    mpz_class pd = pow_p_mpz(p, quad->modexp);
    mpz_class pr = pow_p_mpz(p, rho);
    mpz_class a2 = quad->a2 * pr % pd * pr % pd;
    mpz_class a1 = (2 * quad->a2 * beta + quad->a1) % pd * pr % pd;
    mpz_class a0 = (quad->a2 * beta * beta + quad->a1 * beta + quad->a0) % pd;
    return count_congruence(a2, a1, a0, quad->modexp, t - rho, p);
}

} // namespace

MatrixF coset_representative(const CosetShape& shape, long s, long t, long long star,
                             const PrecisionContext& ctx) {
    if (t < 0) throw bad_parameter("coset representative needs t >= 0");
    MatrixF h = MatrixF::zero(ctx, 3);
    h.at(2, 2) = QuadExtScalar::one(ctx);
    auto pi = [&](long k) { return QuadExtScalar::uniformizer_pow(ctx, k); };
    auto pi_times = [&](long k, long long c) {
        return QuadExtScalar::from_padic(ctx,
                                         PadicScalar::uniformizer_pow(ctx, k).times_integer(c));
    };
    if (shape.parity == Parity::odd) {
        long a = shape.m + 1 - s;
        h.at(0, 0) = pi(a);
        h.at(0, 1) = pi_times(a, star);
        h.at(1, 1) = pi(a + t);
    } else {
        long a = shape.m - s;
        h.at(0, 0) = pi(a + t);
        h.at(1, 0) = pi_times(a, star);
        h.at(1, 1) = pi(a);
    }
    return h;
}

Window default_window(const InstanceShape& shape) {
    long l = std::max(shape.l(), 0L);
    long va = shape.va ? std::max(*shape.va, 0L) : 0;
    long vj = std::max(shape.vj(), 0L);
    return {-2, vj + 2, l + va + vj + 4};
}

long long oracle_cell_count(const MatrixF& y, const CosetShape& shape, long s, long t,
                            const PrecisionContext& ctx, const OracleOptions& opt) {
    CellConditions cc = extract_conditions(symbolic_entries(y, shape, s, t, ctx));
    if (cc.gate_failed) return 0;
    std::optional<long long> pt = pow_bounded(ctx.p(), t, opt.enum_threshold);
    if (pt) {
        long long brute = brute_count(cc.conds, ctx.p(), *pt);
        if (opt.self_check) {
            long long analytic = analytic_count(cc.conds, ctx.p(), t);
            if (analytic != brute)
                throw error("analytic counter disagrees with exhaustive enumeration");
        }
        return brute;
    }
    return analytic_count(cc.conds, ctx.p(), t);
}

OracleResult enumerate_and_tally(const MatrixF& y, Side side, const CosetShape& shape,
                                 const Window& window, const PrecisionContext& ctx,
                                 const OracleOptions& opt) {
    if (y.n() != 3) throw bad_parameter("coset enumeration is for the 3x3 family");
    if (!membership(y, side == Side::group ? SpaceKind::S : SpaceKind::LieS, ctx))
        throw bad_parameter(side == Side::group ? "input is not in the symmetric space"
                                                : "input is not in the tangent space");
    // Cosets with t < 0 exist but never meet the support: the (2,1) (odd
    // family) resp. (1,2) (even family) entry of the conjugate equals the
    // matching corner of y times π^t. Certify that corner has valuation ≤ 0.
    const QuadExtScalar& corner = shape.parity == Parity::odd ? y.at(1, 0) : y.at(0, 1);
    Valuation cv = corner.valuation();
    if (!cv.is_exact() || cv.exact_or_throw() > 0)
        throw window_too_small("cannot certify vanishing of the t < 0 coset classes");

    OracleResult out;
    for (long s = window.s_lo; s <= window.s_hi; ++s)
        for (long t = 0; t <= window.t_hi; ++t) {
            long long alpha = oracle_cell_count(y, shape, s, t, ctx, opt);
            out.cells[{s, t}] = alpha;
            if (alpha != 0) out.tally.counts[shape.det_valuation(s, t)] += alpha;
        }
    for (const auto& [cell, alpha] : out.cells) {
        if (alpha == 0) continue;
        auto [s, t] = cell;
        if (s <= window.s_lo + 1 || s >= window.s_hi - 1 || t >= window.t_hi - 1)
            throw window_too_small("support reaches the enumeration window boundary");
    }
    return out;
}

JointCellResult oracle_cell_joint(const MatrixF& a, const MatrixF& b, const CosetShape& shape,
                                  long s, long t, const PrecisionContext& ctx,
                                  const OracleOptions& opt) {
    std::optional<long long> pt = pow_bounded(ctx.p(), t, opt.enum_threshold);
    if (!pt)
        throw bad_parameter("joint per-coset comparison needs the cell within the "
                            "enumeration threshold");
    CellConditions ca = extract_conditions(symbolic_entries(a, shape, s, t, ctx));
    CellConditions cb = extract_conditions(symbolic_entries(b, shape, s, t, ctx));
    std::vector<FastCong> fa, fb;
    for (const auto& c : ca.conds) fa.emplace_back(c, ctx.p());
    for (const auto& c : cb.conds) fb.emplace_back(c, ctx.p());
    auto verdict = [](bool gate, const std::vector<FastCong>& f, long long star) {
        if (gate) return false;
        for (const auto& c : f)
            if (!c.holds(star)) return false;
        return true;
    };
    JointCellResult out;
    for (long long star = 0; star < *pt; ++star) {
        bool va = verdict(ca.gate_failed, fa, star);
        bool vb = verdict(cb.gate_failed, fb, star);
        if (va) ++out.count_a;
        if (vb) ++out.count_b;
        if (va != vb) out.pointwise_equal = false;
    }
    return out;
}

long long count_quadratic_solutions(const PadicScalar& center, const PadicScalar& target, long t,
                                    long shift, const PrecisionContext& ctx,
                                    const OracleOptions& opt) {
    if (t < 0) throw bad_parameter("count_quadratic_solutions needs t >= 0");
    if (shift < 0 || shift > t) throw bad_parameter("shift space must satisfy 0 <= shift <= t");
    if (t == 0) return 1; // the single residue class; the condition is vacuous
    // (⋆ − center)² ≡ target (mod p^t) as ⋆² − 2·center·⋆ + (center² − target) ≡ 0
    Congruence c;
    c.modexp = t;
    c.a2 = 1;
    c.a1 = (-(center + center)).residue(t);
    c.a0 = (center * center - target).residue(t);
    // substitute ⋆ = p^shift·u and count u mod p^{t−shift}
    mpz_class pd = pow_p_mpz(ctx.p(), t);
    mpz_class pr = pow_p_mpz(ctx.p(), shift);
    mpz_class a2 = pr * pr % pd;
    mpz_class a1 = c.a1 * pr % pd;
    long long analytic = count_congruence(a2, a1, c.a0, t, t - shift, ctx.p());
    if (opt.self_check) {
        std::optional<long long> pt = pow_bounded(ctx.p(), t, opt.enum_threshold);
        if (pt) {
            FastCong f(c, ctx.p());
            long long step = ipow(static_cast<long long>(ctx.p()), shift);
            long long brute = 0;
            for (long long star = 0; star < *pt; star += step)
                if (f.holds(star)) ++brute;
            if (brute != analytic)
                throw error("analytic counter disagrees with exhaustive enumeration");
        }
    }
    return analytic;
}

bool same_coset(const CosetShape& shape, long s1, long t1, long long star1, long s2, long t2,
                long long star2, const PrecisionContext& ctx) {
    MatrixF h1 = coset_representative(shape, s1, t1, star1, ctx);
    MatrixF h2 = coset_representative(shape, s2, t2, star2, ctx);
    MatrixF g = h1 * h2.inverse();
    if (!g.is_integral()) return false;
    Valuation v = g.det().valuation();
    return v.is_exact() && v.exact_or_throw() == 0;
}

} // namespace afl3
