#include "afl3/verify.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace afl3 {

namespace {

using nlohmann::json;

const char* parity_name(Parity p) { return p == Parity::odd ? "odd" : "even"; }

const char* mode_name(RunMode m) {
    switch (m) {
        case RunMode::closed_only: return "closed";
        case RunMode::oracle_only: return "oracle";
        case RunMode::both: return "both";
    }
    return "both";
}

json request_to_json(const InstanceRequest& req) {
    json j;
    j["p"] = req.p;
    j["parity"] = parity_name(req.parity);
    j["m"] = req.m;
    if (req.va)
        j["va"] = *req.va;
    else
        j["va"] = "inf";
    j["vb"] = req.vb;
    j["seed"] = req.seed;
    j["mode"] = mode_name(req.mode);
    return j;
}

std::vector<std::string> errata_for(const InstanceShape& shape) {
    std::vector<std::string> notes;
    if (!shape.low_b_valuation()) return notes;
    long l = shape.l();
    if (shape.parity == Parity::even) {
        std::ostringstream os;
        os << "sigma(0) closed form (l < k family): direct summation gives (l+1)/2 = "
           << (l + 1) / 2 << "; the (l-1)/2 variant = " << sigma_low_b_s0_alt(l)
           << " fails the oracle and per-level cross-checks";
        notes.push_back(os.str());
    }
    for (long s = shape.vj() % 2; s <= shape.vj(); s += 2) {
        if (s >= 1 && l > 2 * s) {
            std::ostringstream os;
            os << "pair closed form sigma(s)+sigma(s-1) at s = " << s
               << ": the e_s coefficient is (l+1)/2 - s = " << ((l + 1) / 2 - s)
               << "; the (l-1)/2 - s variant = " << ((l - 1) / 2 - s)
               << " fails the per-level comparison";
            notes.push_back(os.str());
            break;
        }
    }
    return notes;
}

VerificationRecord run_once(const InstanceRequest& req, const RunOptions& opt, long precision) {
    VerificationRecord rec;
    rec.request = req;
    rec.precision_used = precision;
    PrecisionContext ctx(req.p, precision);
    OracleOptions oracle_opt{opt.enum_threshold, opt.self_check};

    bool canonical_range = req.m >= 0 && req.vb >= 0 && (!req.va || *req.va >= 0);
    if (canonical_range) {
        CanonicalInstance inst = make_instance(ctx, req.parity, req.m, req.va, req.vb, req.seed);
        InstanceShape shape = inst.shape();
        rec.integral = true;
        if (req.mode != RunMode::oracle_only) rec.analytic_closed = analytic_side_closed(shape);
        if (req.mode != RunMode::closed_only)
            rec.analytic_oracle = analytic_side_oracle(inst, oracle_opt);
        LengthBreakdown geo = geometric_side(shape);
        rec.geometric_total = geo.total;
        for (long s = 0; s <= shape.vj(); ++s) {
            PerLevelRow row;
            row.s = s;
            row.sigma = sigma_closed(shape, s);
            row.admissible = ((shape.vj() - s) % 2 == 0);
            if (row.admissible) {
                row.pair = row.sigma + (s > 0 ? sigma_closed(shape, s - 1) : 0);
                row.len_zs = geo.per_level.at(s);
            } else {
                row.pair = 0;
                row.len_zs = 0;
            }
            rec.per_s.push_back(row);
        }
        rec.errata_notes = errata_for(shape);
    } else {
        // raw entry: assemble the (non-integral) element and reduce it
        Rng rng(req.seed * 0x9e3779b97f4a7c15ULL + 0xabcdef);
        QuadExtScalar a = QuadExtScalar::zero(ctx);
        if (req.va)
            a = QuadExtScalar(PadicScalar::zero(ctx),
                              sample_padic_with_valuation(ctx, *req.va, rng), ctx.eps());
        QuadExtScalar b = sample_quadext_with_valuation(ctx, req.vb, rng);
        MatrixF x = build_x_general(ctx, req.parity, req.m, -a, a, QuadExtScalar::zero(ctx), b);
        RawReduction red = reduce_raw(ctx, x);
        rec.integral = red.integral;
        if (red.integral) throw error("internal: raw range instance reduced to integral");
        if (req.mode != RunMode::oracle_only) rec.analytic_closed = 0;
        if (req.mode != RunMode::closed_only) {
            MatrixF y = build_match_y_general(ctx, red.parity, red.m, red.a1, red.a2, red.d,
                                              red.b);
            InstanceShape win_shape{static_cast<long>(ctx.q()), red.parity, red.m, req.vb,
                                    req.va};
            OracleResult r = enumerate_and_tally(y, Side::lie, {red.parity, red.m},
                                                 default_window(win_shape), ctx, oracle_opt);
            rec.analytic_oracle = r.tally.derived_value();
        }
        rec.geometric_total = 0;
    }

    bool holds = true;
    if (rec.analytic_closed && *rec.analytic_closed != rec.geometric_total) holds = false;
    if (rec.analytic_oracle && *rec.analytic_oracle != rec.geometric_total) holds = false;
    rec.afl_holds = holds;
    return rec;
}

} // namespace

long default_precision(const InstanceRequest& req) {
    long l = 2 * std::max(req.vb, 0L) + 1;
    long k_finite = req.va ? 2 * std::max(*req.va, 0L) : 0;
    return 2 * (l + k_finite + 2 * std::max(req.m, 0L)) + 16;
}

VerificationRecord run_verification(const InstanceRequest& req, const RunOptions& opt) {
    long precision = req.precision ? *req.precision : default_precision(req);
    for (;;) {
        auto start = std::chrono::steady_clock::now();
        try {
            VerificationRecord rec = run_once(req, opt, precision);
            if (opt.timings) {
                auto end = std::chrono::steady_clock::now();
                rec.seconds = std::chrono::duration<double>(end - start).count();
            }
            return rec;
        } catch (const precision_exhausted&) {
            if (2 * precision > opt.max_precision) throw;
            precision *= 2;
        }
    }
}

std::string record_to_json(const VerificationRecord& rec, int indent) {
    json j;
    j["instance"] = request_to_json(rec.request);
    j["precision_used"] = rec.precision_used;
    j["integral"] = rec.integral;
    if (rec.analytic_closed)
        j["analytic_closed"] = *rec.analytic_closed;
    else
        j["analytic_closed"] = nullptr;
    if (rec.analytic_oracle)
        j["analytic_oracle"] = *rec.analytic_oracle;
    else
        j["analytic_oracle"] = nullptr;
    j["geometric_total"] = rec.geometric_total;
    j["per_s"] = json::array();
    for (const auto& row : rec.per_s) {
        json r;
        r["s"] = row.s;
        r["sigma"] = row.sigma;
        if (row.admissible) {
            r["pair"] = row.pair;
            r["len_zs"] = row.len_zs;
        }
        j["per_s"].push_back(r);
    }
    j["afl_holds"] = rec.afl_holds;
    j["errata_notes"] = rec.errata_notes;
    if (rec.seconds) j["seconds"] = *rec.seconds;
    return j.dump(indent);
}

SweepResult run_sweep(const SweepRequest& req, const RunOptions& opt) {
    std::vector<InstanceRequest> grid;
    std::vector<std::optional<long>> vas;
    for (long va = 0; va <= req.max_va; ++va) vas.emplace_back(va);
    if (req.include_va_inf) vas.emplace_back(std::nullopt);
    for (uint64_t p : req.primes)
        for (Parity parity : req.parities)
            for (long m = 0; m <= req.max_m; ++m)
                for (const auto& va : vas)
                    for (long vb = 0; vb <= req.max_vb; ++vb)
                        for (int seed = 1; seed <= req.seeds; ++seed) {
                            InstanceRequest r;
                            r.p = p;
                            r.parity = parity;
                            r.m = m;
                            r.va = va;
                            r.vb = vb;
                            r.seed = static_cast<uint64_t>(seed);
                            r.mode = req.mode;
                            r.precision = req.precision;
                            grid.push_back(r);
                        }

    SweepResult out;
    std::vector<std::optional<VerificationRecord>> slots(grid.size());
    unsigned jobs = std::max(1u, opt.jobs);
    std::atomic<size_t> next{0};
    std::atomic<bool> stop{false};
    std::vector<std::thread> workers;
    std::mutex error_mutex;
    auto work = [&]() {
        while (!stop.load()) {
            size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            try {
                slots[i] = run_verification(grid[i], opt);
            } catch (const precision_exhausted& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!out.aborted) {
                    out.aborted = e.what();
                    out.precision_abort = true;
                }
                stop.store(true);
                return;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!out.aborted) out.aborted = e.what();
                stop.store(true);
                return;
            }
        }
    };
    if (jobs == 1) {
        work();
    } else {
        for (unsigned i = 0; i < jobs; ++i) workers.emplace_back(work);
        for (auto& w : workers) w.join();
    }
    // completed records are kept in grid order; an abort flushes the
    // computed subset rather than discarding it
    for (auto& slot : slots)
        if (slot) out.records.push_back(std::move(*slot));
    for (const auto& rec : out.records) (rec.afl_holds ? out.passed : out.failed)++;
    return out;
}

std::string sweep_to_json(const SweepResult& r, int indent) {
    json j;
    j["records"] = json::array();
    for (const auto& rec : r.records) j["records"].push_back(json::parse(record_to_json(rec)));
    j["summary"] = {{"passed", r.passed}, {"failed", r.failed}, {"total", r.records.size()}};
    if (r.aborted) j["aborted"] = *r.aborted;
    return j.dump(indent);
}

std::string sweep_to_csv(const SweepResult& r) {
    std::ostringstream os;
    os << "instance,analytic_closed,analytic_oracle,geometric,afl_holds\n";
    for (const auto& rec : r.records) {
        const InstanceRequest& q = rec.request;
        os << "p=" << q.p << ";parity=" << parity_name(q.parity) << ";m=" << q.m << ";va=";
        if (q.va)
            os << *q.va;
        else
            os << "inf";
        os << ";vb=" << q.vb << ";seed=" << q.seed << ",";
        if (rec.analytic_closed) os << *rec.analytic_closed;
        os << ",";
        if (rec.analytic_oracle) os << *rec.analytic_oracle;
        os << "," << rec.geometric_total << "," << (rec.afl_holds ? "true" : "false") << "\n";
    }
    return os.str();
}

namespace {

struct SuiteRunner {
    const PrecisionContext& ctx;
    int n;
    Rng rng;
    RunOptions opt;

    MatrixF random_lie_u() { return sample_lie_u_integral(ctx, n, rng); }

    MatrixF random_lie_s_rss() {
        for (int i = 0; i < 64; ++i) {
            MatrixF y = sample_lie_s_integral(ctx, n, rng);
            if (is_regular_semisimple(y, ctx)) return y;
        }
        throw unsatisfiable_constraint("no regular semisimple sample found");
    }

    MatrixF random_symmetric_integral() {
        MatrixF y = random_lie_s_rss();
        PadicScalar kap = find_kappa(y, ctx);
        return cayley(y, QuadExtScalar::one(ctx), QuadExtScalar::from_padic(ctx, kap), ctx);
    }

    QuadExtScalar random_lambda_off_spectrum(const MatrixF& g) {
        for (int i = 0; i < 64; ++i) {
            QuadExtScalar lambda = sample_norm_one(ctx, rng);
            if (g.charpoly_at(lambda, ctx).decide_nonzero()) return lambda;
        }
        throw unsatisfiable_constraint("no norm-one element off the spectrum found");
    }

    bool unitary_exchange() {
        MatrixF x = random_lie_u();
        PadicScalar kap = find_kappa(x, ctx);
        QuadExtScalar lambda = sample_norm_one(ctx, rng);
        MatrixF g = cayley(x, lambda, QuadExtScalar::from_padic(ctx, kap), ctx);
        return membership(g, SpaceKind::U, ctx);
    }

    bool symmetric_exchange() {
        MatrixF y = sample_lie_s_integral(ctx, n, rng);
        PadicScalar kap = find_kappa(y, ctx);
        QuadExtScalar lambda = sample_norm_one(ctx, rng);
        MatrixF g = cayley(y, lambda, QuadExtScalar::from_padic(ctx, kap), ctx);
        return membership(g, SpaceKind::S, ctx);
    }

    bool involution() {
        MatrixF x = random_lie_u();
        PadicScalar kap = find_kappa(x, ctx);
        QuadExtScalar kappa = QuadExtScalar::from_padic(ctx, kap);
        QuadExtScalar lambda = sample_norm_one(ctx, rng);
        return cayley(cayley(x, lambda, kappa, ctx), kappa, lambda, ctx).eq(x);
    }

    bool equivariance() {
        MatrixF x = random_lie_u();
        PadicScalar kap = find_kappa(x, ctx);
        QuadExtScalar kappa = QuadExtScalar::from_padic(ctx, kap);
        QuadExtScalar lambda = sample_norm_one(ctx, rng);
        MatrixF h = embed_upper_left(ctx, sample_gl_f(ctx, n - 1, rng), n);
        MatrixF lhs = cayley(h * x * h.inverse(), lambda, kappa, ctx);
        MatrixF rhs = h * cayley(x, lambda, kappa, ctx) * h.inverse();
        return lhs.eq(rhs);
    }

    bool matching_preservation() {
        MatrixF x(0, QuadExtScalar::zero(ctx));
        MatrixF y(0, QuadExtScalar::zero(ctx));
        if (n == 3) {
            Parity parity = rng.below(2) ? Parity::odd : Parity::even;
            long m = rng.range(0, 1);
            std::optional<long> va;
            if (rng.below(3)) va = rng.range(0, 1);
            CanonicalInstance inst =
                make_instance(ctx, parity, m, va, rng.range(0, 1), rng.next());
            x = build_x(inst);
            y = build_match_y(inst);
        } else {
            x = random_lie_u();
            if (!is_regular_semisimple(x, ctx)) return true; // resample next round
            MatrixF h = embed_upper_left(ctx, sample_gl_f(ctx, n - 1, rng), n);
            y = h * x * h.inverse();
        }
        if (!is_regular_semisimple(x, ctx)) return true;
        PadicScalar kap = find_kappa(x, ctx);
        QuadExtScalar kappa = QuadExtScalar::from_padic(ctx, kap);
        QuadExtScalar lambda = sample_norm_one(ctx, rng);
        if (!matches(x, y, ctx)) return false;
        return matches(cayley(x, lambda, kappa, ctx), cayley(y, lambda, kappa, ctx), ctx);
    }

    bool transfer_factor_relation() {
        MatrixF gamma = random_symmetric_integral();
        QuadExtScalar lambda = random_lambda_off_spectrum(gamma);
        QuadExtScalar det_lg = gamma.charpoly_at(lambda, ctx);
        MatrixF y = cayley(gamma, QuadExtScalar::one(ctx), lambda, ctx);
        int lhs = transfer_factor(y, ctx);
        int rhs = transfer_factor(gamma, ctx);
        if ((n - 1) % 2 != 0) rhs *= eta_ext(det_lg); // η(det)^{1−n}
        return lhs == rhs;
    }

    bool kappa_lambda_search() {
        MatrixF x = random_lie_u();
        PadicScalar kap = find_kappa(x, ctx);
        QuadExtScalar kappa = QuadExtScalar::from_padic(ctx, kap);
        MatrixF km = MatrixF::scalar_matrix(ctx, n, kappa) - x;
        Valuation v = km.det().valuation();
        if (!v.is_exact() || v.exact_or_throw() != 0) return false;
        MatrixF gamma = random_symmetric_integral();
        QuadExtScalar lambda = find_lambda(gamma, ctx);
        if (!lambda.norm().eq(PadicScalar::from_integer(ctx, 1))) return false;
        Valuation w = gamma.charpoly_at(lambda, ctx).valuation();
        return w.is_exact() && w.exact_or_throw() == 0;
    }

    bool order_equality() {
        MatrixF x = random_lie_u();
        if (!is_regular_semisimple(x, ctx)) return true;
        PadicScalar kap = find_kappa(x, ctx);
        return verify_order_equality(x, kap, ctx);
    }

    bool group_lie_tally(int index) {
        static const struct {
            Parity parity;
            long m, va, vb;
        } shapes[] = {{Parity::odd, 0, 0, 0},  {Parity::even, 0, 0, 0}, {Parity::odd, 0, -1, 0},
                      {Parity::even, 0, 1, 0}, {Parity::odd, 0, 1, 0}};
        const auto& sh = shapes[static_cast<size_t>(index) % 5];
        std::optional<long> va;
        if (sh.va >= 0) va = sh.va;
        CanonicalInstance inst = make_instance(ctx, sh.parity, sh.m, va, sh.vb, rng.next());
        MatrixF y = build_match_y(inst);
        PadicScalar kap = find_kappa(y, ctx);
        MatrixF gamma = cayley(y, QuadExtScalar::one(ctx), QuadExtScalar::from_padic(ctx, kap),
                               ctx);
        QuadExtScalar lambda = find_lambda(gamma, ctx);
        Window w = default_window(inst.shape());
        OracleOptions oo{opt.enum_threshold, opt.self_check};
        CorrespondReport rep = verify_correspond(gamma, lambda, inst.coset_shape(), w, ctx, oo);
        return rep.all() &&
               rep.group_tally.derived_value() == geometric_side(inst.shape()).total;
    }
};

} // namespace

CayleySuiteReport run_cayley_suite(uint64_t p, int n, int samples, uint64_t seed,
                                   const RunOptions& opt) {
    if (n < 2 || n > 4) throw bad_parameter("the check suite supports n in 2..4");
    if (p < static_cast<uint64_t>(n) + 2)
        throw bad_parameter("requires n + 2 <= q: residue field too small for this n");
    PrecisionContext ctx(p, 48);
    CayleySuiteReport rep;
    rep.p = p;
    rep.n = n;
    rep.samples = samples;
    rep.seed = seed;
    SuiteRunner runner{ctx, n, Rng(seed), opt};

    auto run_check = [&](const std::string& name, auto&& fn, int count) {
        CayleyCheck check;
        check.name = name;
        for (int i = 0; i < count; ++i) (fn(i) ? check.passed : check.failed)++;
        rep.checks.push_back(check);
    };

    run_check("unitary_exchange", [&](int) { return runner.unitary_exchange(); }, samples);
    run_check("symmetric_exchange", [&](int) { return runner.symmetric_exchange(); }, samples);
    run_check("involution", [&](int) { return runner.involution(); }, samples);
    run_check("equivariance", [&](int) { return runner.equivariance(); }, samples);
    run_check("matching_preservation", [&](int) { return runner.matching_preservation(); },
              samples);
    run_check("transfer_factor_relation",
              [&](int) { return runner.transfer_factor_relation(); }, samples);
    run_check("kappa_lambda_search", [&](int) { return runner.kappa_lambda_search(); }, samples);
    run_check("order_equality", [&](int) { return runner.order_equality(); }, samples);
    if (n == 3)
        run_check("group_lie_tally", [&](int i) { return runner.group_lie_tally(i); },
                  std::min(samples, 10));
    return rep;
}

std::string cayley_report_to_json(const CayleySuiteReport& rep, int indent) {
    json j;
    j["p"] = rep.p;
    j["n"] = rep.n;
    j["samples"] = rep.samples;
    j["seed"] = rep.seed;
    j["checks"] = json::array();
    for (const auto& c : rep.checks)
        j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"failed", c.failed}});
    j["all_passed"] = rep.all_passed();
    return j.dump(indent);
}

} // namespace afl3
