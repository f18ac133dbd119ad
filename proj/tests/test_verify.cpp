#include "doctest.h"

#include "cuspcount/verify.hpp"

using namespace cuspcount;

namespace {

VerifyOptions small_grid() {
    VerifyOptions opts;
    opts.q_max = 3;
    opts.n_max = 4;
    opts.ells = {2, 3, 5};
    return opts;
}

} // namespace

TEST_CASE("grid respects the coprimality constraint") {
    const auto grid = make_grid(small_grid());
    CHECK(!grid.empty());
    for (const GridPoint& g : grid) {
        CHECK(g.ground.ell != g.ground.p);
        CHECK(g.form.m * g.form.d <= 4);
        CHECK(g.ground.q <= 3);
    }
}

TEST_CASE("suites pass on a small grid") {
    const VerifyOptions opts = small_grid();
    for (const SuiteResult& result :
         {verify_parameter_relations(opts), verify_parameter_validity(opts),
          verify_congruence_bound(opts), verify_congruence_gap(opts),
          verify_central_bound(opts), verify_lift_equivalence(opts),
          verify_count_level_zero(opts), verify_correspondence(opts),
          verify_cross_division(opts)}) {
        INFO(result.name);
        for (const VerifyFailure& f : result.failures) {
            INFO(f.instance, ": ", f.detail);
        }
        CHECK(result.failures.empty());
        CHECK(result.instances > 0);
    }
}

TEST_CASE("parallel and serial sweeps agree") {
    VerifyOptions serial = small_grid();
    serial.parallel = false;
    serial.n_max = 3;
    VerifyOptions parallel = serial;
    parallel.parallel = true;
    const SuiteResult a = verify_congruence_bound(serial);
    const SuiteResult b = verify_congruence_bound(parallel);
    CHECK(a.instances == b.instances);
    CHECK(a.failures.size() == b.failures.size());
}

TEST_CASE("the valuation split disagrees with the coprimality phrasing somewhere") {
    VerifyOptions opts;
    opts.q_max = 2;
    opts.n_max = 6;
    opts.ells = {3};
    const SuiteResult gap = verify_congruence_gap(opts);
    CHECK(gap.failures.empty());
    CHECK(gap.counters.at("split_disagreements") >= 1);
}

TEST_CASE("summary machinery propagates failures") {
    VerifySummary summary;
    summary.suites.push_back(SuiteResult{"fine", 10, {}, {}});
    CHECK(summary.ok());
    summary.suites.push_back(
        SuiteResult{"broken", 3, {{"broken", "q=2", "injected"}}, {}});
    CHECK(!summary.ok());
    CHECK(summary.total_instances() == 13);
}

TEST_CASE("synthetic endoclasses include nonzero records") {
    const auto endos = synthetic_endoclasses();
    unsigned nonzero = 0;
    for (const EndoclassRecord& e : endos) {
        CHECK(e.deg % e.res_deg == 0);
        if (!e.is_zero())
            ++nonzero;
    }
    CHECK(nonzero >= 2);
}
