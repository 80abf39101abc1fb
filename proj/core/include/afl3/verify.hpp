#pragma once

#include <string>
#include <vector>

#include "afl3/cayley.hpp"
#include "afl3/lengths.hpp"

namespace afl3 {

enum class RunMode { closed_only, oracle_only, both };

struct InstanceRequest {
    uint64_t p = 5;
    Parity parity = Parity::odd;
    long m = 0;
    std::optional<long> va = 0; // empty = a is 0 (k = ∞)
    long vb = 0;                // negative values route through the raw entry
    uint64_t seed = 1;
    std::optional<long> precision; // override the default working precision
    RunMode mode = RunMode::both;
};

struct RunOptions {
    bool timings = false;
    long long enum_threshold = 1'000'000;
    bool self_check = false;
    long max_precision = 4096; // auto-doubling cap (env AFL_PRECISION_MAX)
    unsigned jobs = 1;         // sweep parallelism
};

struct PerLevelRow {
    long s;
    long long sigma;
    bool admissible;    // s ≡ v(j) (mod 2)
    long long pair;     // σ(s) + σ(s−1), admissible rows only
    long long len_zs;   // len Z_s, admissible rows only
};

struct VerificationRecord {
    InstanceRequest request;
    long precision_used = 0;
    bool integral = true;
    std::optional<long long> analytic_closed;
    std::optional<long long> analytic_oracle;
    long long geometric_total = 0;
    std::vector<PerLevelRow> per_s;
    bool afl_holds = false;
    std::vector<std::string> errata_notes;
    std::optional<double> seconds;
};

/// The working precision used when the request does not pin one:
/// 2·(l + k_finite + 2m) + 16.
long default_precision(const InstanceRequest& req);

/// Build the instance, compute the requested sides (with automatic
/// precision doubling up to opt.max_precision), and compare.
VerificationRecord run_verification(const InstanceRequest& req, const RunOptions& opt = {});

std::string record_to_json(const VerificationRecord& rec, int indent = 2);

struct SweepRequest {
    std::vector<uint64_t> primes = {5, 7};
    std::vector<Parity> parities = {Parity::odd, Parity::even};
    long max_m = 2;
    long max_va = 2;
    bool include_va_inf = true;
    long max_vb = 2;
    int seeds = 1;
    RunMode mode = RunMode::both;
    std::optional<long> precision; // force a working precision on every point
};

struct SweepResult {
    std::vector<VerificationRecord> records;
    size_t passed = 0;
    size_t failed = 0;
    /// Set when the sweep aborted; records then hold the completed prefix
    /// of the grid (partial results are flushed, not discarded).
    std::optional<std::string> aborted;
    bool precision_abort = false;
};

SweepResult run_sweep(const SweepRequest& req, const RunOptions& opt = {});
std::string sweep_to_json(const SweepResult& r, int indent = 2);
std::string sweep_to_csv(const SweepResult& r);

struct CayleyCheck {
    std::string name;
    int passed = 0;
    int failed = 0;
};

struct CayleySuiteReport {
    uint64_t p = 0;
    int n = 0;
    int samples = 0;
    uint64_t seed = 0;
    std::vector<CayleyCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (c.failed) return false;
        return true;
    }
};

/// Randomized checks of the transform identities: unitarity/symmetric
/// exchange, involution, equivariance, matching preservation, the
/// transfer-factor relation ω(c⁻¹_λ(γ)) = η(det(λ−γ))^{1−n}·Ω(γ), the
/// κ/λ searches with order equality, and (n = 3) the group↔Lie tally
/// comparison on canonical instances. Refuses q < n + 2.
CayleySuiteReport run_cayley_suite(uint64_t p, int n, int samples, uint64_t seed,
                                   const RunOptions& opt = {});
std::string cayley_report_to_json(const CayleySuiteReport& rep, int indent = 2);

} // namespace afl3
