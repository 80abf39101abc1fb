// afl3: verify the n = 3 arithmetic fundamental lemma identity by exact
// p-adic computation. Subcommands:
//   verify       one instance, JSON record on stdout
//   sweep        a parameter grid, JSON or CSV report
//   cayley-suite randomized checks of the Cayley-transform identities
//
// Exit codes: 0 success, 1 identity failure, 2 usage error, 3 precision
// exhausted after retries.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "afl3/verify.hpp"

namespace {

std::optional<long> parse_va(const std::string& s) {
    if (s == "inf" || s == "INF" || s == "oo") return std::nullopt;
    return std::stol(s);
}

afl3::Parity parse_parity(const std::string& s) {
    if (s == "odd") return afl3::Parity::odd;
    if (s == "even") return afl3::Parity::even;
    throw CLI::ValidationError("--parity", "must be odd or even");
}

afl3::RunMode parse_mode(const std::string& s) {
    if (s == "closed") return afl3::RunMode::closed_only;
    if (s == "oracle") return afl3::RunMode::oracle_only;
    if (s == "both") return afl3::RunMode::both;
    throw CLI::ValidationError("--mode", "must be closed, oracle or both");
}

long max_precision_from_env() {
    if (const char* env = std::getenv("AFL_PRECISION_MAX")) {
        long v = std::atol(env);
        if (v >= 1) return v;
    }
    return 4096;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of the n=3 arithmetic fundamental lemma"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "verify a single instance");
    uint64_t p = 5;
    std::string parity = "odd", va = "0", mode = "both";
    long m = 0, vb = 0;
    uint64_t seed = 1;
    long precision = 0;
    bool timings = false, self_check = false;
    verify->add_option("--p", p, "odd prime >= 5");
    verify->add_option("--parity", parity, "parity of v(j): odd or even");
    verify->add_option("--m", m, "m with v(j) = 2m + parity");
    verify->add_option("--va", va, "v(a), or 'inf' for a = 0");
    verify->add_option("--vb", vb, "v(b); negative goes through the raw entry");
    verify->add_option("--unit-seed", seed, "seed for the unit parts");
    verify->add_option("--precision", precision, "working precision override");
    verify->add_option("--mode", mode, "closed, oracle or both");
    verify->add_flag("--timings", timings, "include wall time in the record");
    verify->add_flag("--self-check", self_check, "cross-check the analytic counter");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "verify a parameter grid");
    std::string primes = "5,7", out_path, format = "json";
    long max_m = 2, max_va = 2, max_vb = 2;
    int seeds = 1;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    bool finite_va_only = false;
    std::string sweep_mode = "both";
    sweep->add_option("--p", primes, "comma-separated primes");
    sweep->add_option("--max-m", max_m, "m range 0..max");
    sweep->add_option("--max-va", max_va, "v(a) range 0..max (plus inf)");
    sweep->add_flag("--finite-va-only", finite_va_only, "omit the a = 0 column");
    sweep->add_option("--max-vb", max_vb, "v(b) range 0..max");
    sweep->add_option("--seeds", seeds, "unit seeds per grid point");
    sweep->add_option("--out", out_path, "report file (stdout if omitted)");
    sweep->add_option("--format", format, "json or csv");
    sweep->add_option("--mode", sweep_mode, "closed, oracle or both");
    sweep->add_option("--jobs", jobs, "worker threads");
    long sweep_precision = 0;
    sweep->add_option("--precision", sweep_precision, "working precision override");
    bool sweep_self_check = false;
    sweep->add_flag("--self-check", sweep_self_check, "cross-check the analytic counter");

    // cayley-suite
    auto* suite = app.add_subcommand("cayley-suite", "randomized transform identity checks");
    uint64_t sp = 5, sseed = 1;
    int sn = 3, samples = 100;
    suite->add_option("--p", sp, "odd prime >= 5");
    suite->add_option("--n", sn, "matrix size (2..4)");
    suite->add_option("--samples", samples, "samples per check");
    suite->add_option("--seed", sseed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        afl3::RunOptions opt;
        opt.max_precision = max_precision_from_env();

        if (verify->parsed()) {
            afl3::InstanceRequest req;
            req.p = p;
            req.parity = parse_parity(parity);
            req.m = m;
            req.va = parse_va(va);
            req.vb = vb;
            req.seed = seed;
            if (precision > 0) req.precision = precision;
            req.mode = parse_mode(mode);
            opt.timings = timings;
            opt.self_check = self_check;
            afl3::VerificationRecord rec = afl3::run_verification(req, opt);
            std::cout << afl3::record_to_json(rec) << "\n";
            return rec.afl_holds ? 0 : 1;
        }

        if (sweep->parsed()) {
            afl3::SweepRequest req;
            req.primes.clear();
            std::stringstream ss(primes);
            std::string tok;
            while (std::getline(ss, tok, ',')) req.primes.push_back(std::stoull(tok));
            req.max_m = max_m;
            req.max_va = max_va;
            req.include_va_inf = !finite_va_only;
            req.max_vb = max_vb;
            req.seeds = seeds;
            req.mode = parse_mode(sweep_mode);
            if (sweep_precision > 0) req.precision = sweep_precision;
            opt.jobs = jobs;
            opt.self_check = sweep_self_check;
            afl3::SweepResult result = afl3::run_sweep(req, opt);
            std::string report =
                format == "csv" ? afl3::sweep_to_csv(result) : afl3::sweep_to_json(result);
            if (out_path.empty()) {
                std::cout << report;
            } else {
                std::ofstream f(out_path);
                if (!f) throw afl3::bad_parameter("cannot open report file: " + out_path);
                f << report;
            }
            std::cerr << "sweep: " << result.passed << " passed, " << result.failed
                      << " failed of " << result.records.size() << "\n";
            if (result.aborted) {
                std::cerr << "sweep aborted: " << *result.aborted
                          << " (partial results flushed)\n";
                return result.precision_abort ? 3 : 2;
            }
            return result.failed == 0 ? 0 : 1;
        }

        if (suite->parsed()) {
            if (samples < 0) throw afl3::bad_parameter("--samples must be >= 0");
            afl3::CayleySuiteReport rep = afl3::run_cayley_suite(sp, sn, samples, sseed, opt);
            std::cout << afl3::cayley_report_to_json(rep) << "\n";
            return rep.all_passed() ? 0 : 1;
        }
    } catch (const afl3::precision_exhausted& e) {
        std::cerr << "error: " << e.what() << " (raise AFL_PRECISION_MAX?)\n";
        return 3;
    } catch (const afl3::bad_parameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const afl3::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
