#include "doctest.h"

#include <utility>
#include <vector>

#include "pufkey/ctaudit.hpp"
#include "pufkey/gf2m.hpp"

using namespace pufkey;

namespace {

RsSpec rs73() { return RsSpec(Field(3, 0xB), 7, 3); }

ConcatSpec small_concat() { return ConcatSpec(RmSpec(1, 3), RsSpec(Field(4, 0x13), 15, 5)); }

} // namespace

TEST_CASE("audit harness verdict mechanics") {
    AuditedRun constant = [](int, Rng&) {
        OpCountReport r;
        r.muls = 10;
        r.adds = 7;
        return r;
    };
    AuditVerdict v = audit(constant, 9, 42);
    CHECK(v.pass);
    CHECK(v.first_divergent == -1);
    REQUIRE(v.reports.size() == 9);
    for (const OpCountReport& r : v.reports)
        CHECK(r == v.reports[0]);

    AuditedRun leaky = [](int run, Rng&) {
        OpCountReport r;
        r.muls = (run == 3) ? 11u : 10u;
        return r;
    };
    AuditVerdict bad = audit(leaky, 6, 42);
    CHECK_FALSE(bad.pass);
    CHECK(bad.first_divergent == 3);
    CHECK(bad.reports.size() == 6);
    CHECK(bad.reports[3] != bad.reports[0]);
}

TEST_CASE("audit is reproducible for a fixed seed") {
    AuditedRun run = gs_audit_run(rs73(), select_params(7, 3, 2), 0);
    AuditVerdict a = audit(run, 8, 7);
    AuditVerdict b = audit(run, 8, 7);
    CHECK(a.pass == b.pass);
    CHECK(a.reports == b.reports);

    AuditVerdict c = audit(run, 8, 8);
    CHECK(c.pass); // different inputs, same constant counts
    CHECK(c.reports[0] == a.reports[0]);
}

TEST_CASE("list decoder counts are input independent in every feasible class") {
    RsSpec spec = rs73();
    const std::pair<int, int> classes[] = {{1, 0}, {1, 1}, {1, 2}, {1, 3},
                                           {2, 0}, {2, 1}, {3, 0}};
    for (auto [tau, eps] : classes) {
        CAPTURE(tau);
        CAPTURE(eps);
        GsParams params = select_params(spec, tau);
        AuditVerdict v = audit(gs_audit_run(spec, params, eps), 12, 1000 + tau * 10 + eps);
        CHECK(v.pass);
        CHECK(v.first_divergent == -1);
        CHECK(v.reports.size() == 12);
        CHECK(v.reports[0].muls > 0);
        CHECK(v.reports[0].rr_calls > 0);
    }
}

TEST_CASE("strict padding keeps counts equal across erasure counts") {
    RsSpec spec = rs73();
    GsParams params = select_params(spec, 2);
    std::vector<OpCountReport> baselines;
    for (int eps : {0, 1, 2}) {
        AuditVerdict v = audit(gs_audit_run(spec, params, eps, PaddingMode::Strict), 10, 55 + eps);
        CHECK(v.pass);
        baselines.push_back(v.reports[0]);
    }
    CHECK(baselines[1] == baselines[0]);
    CHECK(baselines[2] == baselines[0]);
}

TEST_CASE("erasure-count padding re-derives work per erasure class") {
    RsSpec spec = rs73();
    GsParams params = select_params(spec, 1);
    AuditVerdict e0 = audit(gs_audit_run(spec, params, 0), 6, 3);
    AuditVerdict e2 = audit(gs_audit_run(spec, params, 2), 6, 3);
    CHECK(e0.pass);
    CHECK(e2.pass);
    CHECK(e0.reports[0] != e2.reports[0]); // shorter effective length, less work
}

TEST_CASE("inner ML decoder counts are input independent") {
    for (const RmSpec& spec : {RmSpec(1, 3), RmSpec(1, 5)}) {
        AuditVerdict v = audit(rm_audit_run(spec), 20, 17);
        CHECK(v.pass);
        CHECK(v.first_divergent == -1);
        CHECK(v.reports[0].bit_ops > 0);
        CHECK(v.reports[0].muls == 0);
    }
}

TEST_CASE("concatenated decode counts are input independent in strict mode") {
    ConcatSpec spec = small_concat();

    ConcatDecodeOptions strict;
    strict.tau = 3;
    strict.mode = PaddingMode::Strict;
    AuditVerdict sv = audit(concat_audit_run(spec, strict), 8, 30);
    CHECK(sv.pass);
    CHECK(sv.first_divergent == -1);
    CHECK(sv.reports.size() == 8);
    CHECK(sv.reports[0].bit_ops > 0);
    CHECK(sv.reports[0].muls > 0);

    // erasure-count padding tailors the outer system to the (data-dependent)
    // number of inner erasures, so it cannot promise constant counts
    AuditVerdict v = audit(concat_audit_run(spec, ConcatDecodeOptions{}), 8, 29);
    CHECK_FALSE(v.pass);
}

TEST_CASE("data-dependent elimination is flagged") {
    RsSpec spec = rs73();
    GsParams params = select_params(spec, 2);
    AuditVerdict v = audit(negative_control_run(spec, params, 0), 12, 91);
    CHECK_FALSE(v.pass);
    CHECK(v.first_divergent > 0);
    CHECK(v.first_divergent < 12);
    CHECK(v.reports[static_cast<size_t>(v.first_divergent)] != v.reports[0]);
}
