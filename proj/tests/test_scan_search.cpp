#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "convexsum/scan.hpp"
#include "convexsum/search.hpp"
#include "convexsum/suite.hpp"
#include "oracles.hpp"

using namespace convexsum;
using oracle::Q;

TEST_CASE("scan rows for the worked families") {
    auto rows = scan_growth({.family = Family::squares}, {16, 64}, 1);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 16);
    CHECK(rows[0].sumset_size == 122);
    CHECK(rows[0].diffset_size == 193); // i^2 - j^2 = (i-j)(i+j) collides freely
    CHECK(*rows[0].margin_thm11 > 1.0);
    CHECK(*rows[0].margin_thm12_minus > 1.0);

    auto ap = scan_growth({.family = Family::ap}, {64}, 1);
    CHECK(ap[0].sumset_size == 127); // 2n-1
    CHECK(ap[0].diffset_size == 127);

    auto gp = scan_growth({.family = Family::gp, .ratio = Q(2)}, {32}, 1);
    CHECK(gp[0].sumset_size == 528); // n(n+1)/2, all binary pair sums distinct
    CHECK(*gp[0].prodset_size == 63);
}

TEST_CASE("scan rejects oversized grids and honors workers") {
    CHECK_THROWS_AS(scan_growth({.family = Family::squares}, {8192}, 1), GridTooLarge);
    auto serial = scan_growth({.family = Family::random_uniform}, {8, 16, 24}, 7, 1);
    auto parallel = scan_growth({.family = Family::random_uniform}, {8, 16, 24}, 7, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].sumset_size == parallel[i].sumset_size);
        CHECK(serial[i].e2 == parallel[i].e2);
    }
}

TEST_CASE("CSV round trip is bit-stable") {
    auto rows = scan_growth({.family = Family::squares}, {8, 16, 32}, 1);
    std::string csv = scan_to_csv(rows);
    CHECK(csv.rfind("schema=1\n", 0) == 0);
    auto parsed = scan_from_csv(csv);
    REQUIRE(parsed.size() == rows.size());
    CHECK(scan_to_csv(parsed) == csv);
    CHECK(parsed[2].e3 == rows[2].e3);

    CHECK_THROWS_AS(scan_from_csv("family,n\n"), ParseError);
}

TEST_CASE("fit recovers exact power laws") {
    std::vector<ScanRow> rows;
    for (std::size_t n : {4, 8, 16, 32, 64}) {
        ScanRow r;
        r.family = "synthetic";
        r.n = n;
        r.sumset_size = Integer(static_cast<unsigned long>(n * n));
        r.diffset_size = 1;
        r.e2 = 1;
        r.e3 = 1;
        rows.push_back(r);
    }
    FitResult fit = fit_exponent(rows, "n", "sumset");
    CHECK(std::fabs(fit.slope - 2.0) <= 1e-12);
    CHECK(std::fabs(fit.residual) <= 1e-12);

    CHECK_THROWS_AS(fit_exponent({rows[0]}, "n", "sumset"), DegenerateFit);
    auto flat = rows;
    for (auto& r : flat) r.n = 16;
    CHECK_THROWS_AS(fit_exponent(flat, "n", "sumset"), DegenerateFit);
}

TEST_CASE("fitted sumset exponents: AP low, squares high") {
    auto ap_rows = scan_growth({.family = Family::ap}, {64, 128, 256, 512, 1024}, 1);
    FitResult ap_fit = fit_exponent(ap_rows, "n", "sumset");
    CHECK(ap_fit.slope < 1.1);
    CHECK(ap_fit.slope > 0.9);

    auto sq_rows = scan_growth({.family = Family::squares}, {64, 128, 256, 512, 1024}, 1);
    FitResult sq_fit = fit_exponent(sq_rows, "n", "sumset");
    CHECK(sq_fit.slope >= 14.0 / 9.0);
}

TEST_CASE("search: no-op budget returns the seed state") {
    SearchOptions opt;
    opt.iterations = 0;
    SearchState st = extremal_search(8, SearchObjective::plus_ratio, opt);
    CHECK(st.gaps == std::vector<std::int64_t>{3, 5, 7, 9, 11, 13, 15});
    CHECK(st.best_gaps == st.gaps);
    CHECK(st.objective == st.best_objective);
    // seed set is the squares; objective matches a direct computation
    FiniteSet sq = generate({.family = Family::squares, .n = 8});
    double expect = static_cast<double>(sumset(sq, sq).size()) * std::pow(std::log2(8.0), 2.0 / 9.0) /
                    std::pow(8.0, 14.0 / 9.0);
    CHECK(st.objective == doctest::Approx(expect).epsilon(1e-14));
    CHECK(st.current_set() == sq);
    CHECK_THROWS_AS(extremal_search(2, SearchObjective::plus_ratio, opt), InvalidParameter);
}

TEST_CASE("search invariants") {
    SearchOptions opt;
    opt.iterations = 3000;
    opt.seed = 42;
    SearchState st = extremal_search(24, SearchObjective::plus_ratio, opt);

    // best-so-far is monotone nonincreasing along the trace
    double best = std::numeric_limits<double>::infinity();
    double prev_best = st.t0 > 0 ? std::numeric_limits<double>::infinity() : 0;
    (void)prev_best;
    FiniteSet seed_set = generate({.family = Family::squares, .n = 24});
    double initial = static_cast<double>(sumset(seed_set, seed_set).size()) *
                     std::pow(std::log2(24.0), 2.0 / 9.0) / std::pow(24.0, 14.0 / 9.0);
    best = initial;
    for (const auto& move : st.trace) {
        CHECK(move.objective > 0);
        best = std::min(best, move.objective);
    }
    CHECK(st.best_objective == doctest::Approx(best));
    CHECK(st.best_objective <= initial); // search includes the seed

    // every visited state stays convex; final state gaps strictly increase
    for (std::size_t i = 0; i + 1 < st.gaps.size(); ++i) CHECK(st.gaps[i] < st.gaps[i + 1]);
    CHECK(is_convex(st.current_set()).convex);
    CHECK(is_convex(st.best_set()).convex);

    // determinism
    SearchState again = extremal_search(24, SearchObjective::plus_ratio, opt);
    CHECK(again.gaps == st.gaps);
    CHECK(again.best_objective == st.best_objective);
    CHECK(again.accepted == st.accepted);

    // replaying the accepted-move trace keeps gaps strictly increasing at
    // every step and ends at the final state
    std::vector<std::int64_t> replay(23);
    for (std::size_t i = 0; i < replay.size(); ++i) replay[i] = static_cast<std::int64_t>(2 * i + 3);
    for (const auto& move : st.trace) {
        replay[move.gap_index] += move.delta;
        for (std::size_t i = 0; i + 1 < replay.size(); ++i) REQUIRE(replay[i] < replay[i + 1]);
        REQUIRE(replay[0] >= 1);
    }
    CHECK(replay == st.gaps);

    // hill climb never accepts uphill moves
    SearchOptions hill;
    hill.iterations = 2000;
    hill.seed = 5;
    hill.t0 = 0.0;
    SearchState hc = extremal_search(16, SearchObjective::minus_ratio, hill);
    double cur = std::numeric_limits<double>::infinity();
    for (const auto& move : hc.trace) {
        bool downhill = move.objective < cur;
        CHECK(downhill);
        cur = move.objective;
    }
}

TEST_CASE("suite runner on a small corpus") {
    std::vector<FamilySpec> specs = {
        {.family = Family::squares, .n = 16},
        {.family = Family::random_convex_gaps, .n = 12, .seed = 3},
        {.family = Family::gp, .n = 8, .ratio = Q(2)},
        {.family = Family::ap, .n = 24},
        {.family = Family::random_uniform, .n = 12, .seed = 9},
    };
    auto corpus = build_corpus(specs);
    SuiteConfig cfg;
    cfg.workers = 1;
    SuiteReport report = run_suite(corpus, cfg);
    CHECK(report.failed == 0); // non-convex failures are labeled controls
    CHECK(report.exit_code == 0);
    CHECK(report.held > 0);
    CHECK(report.max_ratios.count("energy_convex_bound") == 1);

    // worker count must not change the canonical report
    SuiteConfig par = cfg;
    par.workers = 8;
    SuiteReport rep8 = run_suite(corpus, par);
    CHECK(suite_report_to_json(rep8).dump() == suite_report_to_json(report).dump());

    // the AP member fails its convexity-dependent checks as a labeled control
    CHECK(report.control_failed > 0);

    // restricted check list is honored
    SuiteConfig only;
    only.enabled = std::vector<std::string>{"energy_identity"};
    SuiteReport small = run_suite(corpus, only);
    CHECK(!small.checks.empty());
    for (const auto& e : small.checks) CHECK(e.result.name == "energy_identity");

    // an explicitly empty check list produces an empty report
    SuiteConfig none;
    none.enabled = std::vector<std::string>{};
    CHECK(run_suite(corpus, none).checks.empty());

    // empty corpus -> empty report
    SuiteReport empty = run_suite({}, cfg);
    CHECK(empty.checks.empty());
    CHECK(empty.exit_code == 0);
}
