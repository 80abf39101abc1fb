#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "afl3/verify.hpp"

using namespace afl3;

TEST_CASE("verification record fields") {
    InstanceRequest req;
    req.p = 5;
    req.parity = Parity::odd;
    req.m = 0;
    req.va = 0;
    req.vb = 0;
    VerificationRecord rec = run_verification(req);
    CHECK(rec.afl_holds);
    CHECK(rec.analytic_closed == 1);
    CHECK(rec.analytic_oracle == 1);
    CHECK(rec.geometric_total == 1);
    CHECK(rec.per_s.size() == 2);
    CHECK(rec.precision_used == default_precision(req));

    std::string json = record_to_json(rec);
    CHECK(json.find("\"afl_holds\": true") != std::string::npos);
    CHECK(json.find("\"seconds\"") == std::string::npos); // timings are opt-in
}

TEST_CASE("records are byte-identical across reruns") {
    InstanceRequest req;
    req.p = 7;
    req.parity = Parity::even;
    req.m = 1;
    req.va = std::nullopt;
    req.vb = 1;
    req.seed = 3;
    CHECK(record_to_json(run_verification(req)) == record_to_json(run_verification(req)));

    SweepRequest sweep;
    sweep.primes = {5};
    sweep.max_m = 1;
    sweep.max_va = 0;
    sweep.max_vb = 1;
    RunOptions two_jobs;
    two_jobs.jobs = 2;
    CHECK(sweep_to_json(run_sweep(sweep, two_jobs)) == sweep_to_json(run_sweep(sweep, {})));
    CHECK(sweep_to_csv(run_sweep(sweep, {})) == sweep_to_csv(run_sweep(sweep, two_jobs)));
}

TEST_CASE("sweep summary and csv format") {
    SweepRequest sweep;
    sweep.primes = {5};
    sweep.max_m = 0;
    sweep.max_va = 1;
    sweep.max_vb = 0;
    sweep.seeds = 2;
    SweepResult result = run_sweep(sweep, {});
    CHECK(result.records.size() == 2u * 3u * 2u); // parities × (va 0,1,inf) × seeds
    CHECK(result.failed == 0);
    CHECK(result.passed == result.records.size());

    std::string csv = sweep_to_csv(result);
    CHECK(csv.rfind("instance,analytic_closed,analytic_oracle,geometric,afl_holds\n", 0) == 0);

    SweepRequest empty;
    empty.primes = {};
    SweepResult none = run_sweep(empty, {});
    CHECK(none.records.empty());
    CHECK(none.failed == 0);
    CHECK_FALSE(none.aborted.has_value());
}

TEST_CASE("aborted sweeps flush partial results") {
    SweepRequest sweep;
    sweep.primes = {5};
    sweep.max_m = 1;
    sweep.max_va = 1;
    sweep.max_vb = 1;
    sweep.precision = 1; // far below what the window needs
    RunOptions strangled;
    strangled.max_precision = 2; // retries cannot rescue it; first point aborts
    SweepResult result = run_sweep(sweep, strangled);
    CHECK(result.aborted.has_value());
    CHECK(result.precision_abort);
    CHECK(result.records.size() < 24);
    CHECK(sweep_to_json(result).find("aborted") != std::string::npos);
}

TEST_CASE("raw-entry instances through the driver") {
    InstanceRequest req;
    req.p = 5;
    req.vb = -1;
    VerificationRecord rec = run_verification(req);
    CHECK_FALSE(rec.integral);
    CHECK(rec.analytic_closed == 0);
    CHECK(rec.analytic_oracle == 0);
    CHECK(rec.geometric_total == 0);
    CHECK(rec.afl_holds);
}

TEST_CASE("errata notes trigger on the affected branches") {
    // even parity and l < k: the s = 0 branch is exercised
    InstanceRequest req;
    req.p = 5;
    req.parity = Parity::even;
    req.m = 0;
    req.va = std::nullopt;
    req.vb = 1;
    req.mode = RunMode::closed_only;
    VerificationRecord rec = run_verification(req);
    REQUIRE(!rec.errata_notes.empty());
    CHECK(rec.errata_notes[0].find("(l+1)/2 = 2") != std::string::npos);
    CHECK(rec.errata_notes[0].find("(l-1)/2 variant = 1") != std::string::npos);

    // odd-parity high-l instance also exercises the pair form
    InstanceRequest req2 = req;
    req2.parity = Parity::odd;
    req2.m = 2;
    req2.vb = 2;
    VerificationRecord rec2 = run_verification(req2);
    bool has_pair_note = false;
    for (const auto& note : rec2.errata_notes)
        if (note.find("pair closed form") != std::string::npos) has_pair_note = true;
    CHECK(has_pair_note);

    // no notes when k < l
    InstanceRequest req3 = req;
    req3.va = 0;
    req3.vb = 1;
    CHECK(run_verification(req3).errata_notes.empty());
}

TEST_CASE("precision retry honours the cap") {
    InstanceRequest req;
    req.p = 5;
    req.precision = 1; // far below what the instance needs
    RunOptions opt;
    opt.max_precision = 2;
    CHECK_THROWS_AS(run_verification(req, opt), precision_exhausted);
    RunOptions generous;
    CHECK(run_verification(req, generous).afl_holds); // doubling rescues it
}

TEST_CASE("cayley suite report shape") {
    CayleySuiteReport rep = run_cayley_suite(5, 3, 2, 9);
    CHECK(rep.all_passed());
    std::string json = cayley_report_to_json(rep);
    CHECK(json.find("group_lie_tally") != std::string::npos);
    CHECK(cayley_report_to_json(run_cayley_suite(5, 3, 2, 9)) == json);

    CayleySuiteReport vacuous = run_cayley_suite(7, 2, 0, 1);
    CHECK(vacuous.all_passed());
    for (const auto& c : vacuous.checks) CHECK(c.passed + c.failed == 0);
}
