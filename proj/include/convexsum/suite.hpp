#pragma once

// Corpus-wide check runner. Members run concurrently into indexed slots, so
// the assembled report is byte-identical for any worker count.

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "convexsum/check.hpp"
#include "convexsum/generators.hpp"
#include "convexsum/inequalities.hpp"
#include "convexsum/parallel.hpp"

namespace convexsum {

struct SuiteConfig {
    unsigned workers = 1;
    // configured constants for the asymptotic (Vinogradov) statements
    Rational c_growth = Rational(1);
    Rational c_tail = Rational(16);
    Rational c_e3_log = Rational(8);
    Rational c_energy_bound = Rational(1);
    Rational c_e2e15 = Rational(1);
    // cost caps
    std::size_t identity_cap = 128; // literal per-s energy identity
    std::size_t pair_cap = 64;      // fractional-energy / pair-bound checks
    std::size_t cs_sweep_cap = 32;  // full per-s cs_step sweep
    // nullopt = every check; an explicit empty list runs none
    std::optional<std::vector<std::string>> enabled;
    CorpusConfig corpus;

    bool on(const char* name) const {
        if (!enabled) return true;
        for (const auto& e : *enabled)
            if (e == name) return true;
        return false;
    }
};

struct SuiteEntry {
    std::size_t corpus_index = 0;
    std::string member;
    CheckResult result;
};

struct SuiteReport {
    nlohmann::json corpus_desc;
    std::vector<SuiteEntry> checks;
    std::map<std::string, double> max_ratios;
    std::size_t held = 0, marginal = 0, failed = 0, control_failed = 0;
    double elapsed_seconds = 0.0; // excluded from the canonical JSON
    int exit_code = 0;            // 0 pass, 2 exact-check failure, 3 constant-check failure
};

namespace detail {

// All checks applicable to one corpus member (paired with `next` for the
// cross-set checks). Pure function of (member, next, config).
inline std::vector<CheckResult> member_checks(const CorpusMember& m, const CorpusMember& next,
                                              const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    const FiniteSet& a = m.set;
    std::size_t n = a.size();

    if (cfg.on("energy_identity") && n <= cfg.identity_cap) out.push_back(check_energy_identity(a));
    if (cfg.on("e3_log_bound") && n >= 2) out.push_back(check_e3_log_bound(a, cfg.c_e3_log));
    if (cfg.on("energy_convex_bound")) out.push_back(check_energy_convex_bound(a, a, cfg.c_energy_bound));
    if (cfg.on("restricted_energy_bound")) out.push_back(check_restricted_energy_bound(a, a));
    if (cfg.on("fractional_energy_bound") && n <= cfg.pair_cap) out.push_back(check_fractional_energy_bound(a, a));
    if (cfg.on("e2_e15")) out.push_back(check_e2_e15(a, cfg.c_e2e15));
    if (cfg.on("tail_bound")) out.push_back(check_tail_bound(a, a, cfg.c_tail));
    if (cfg.on("convex_sumset_growth") && n >= 2) out.push_back(check_convex_sumset_growth(a, cfg.c_growth));
    if (cfg.on("small_doubling_growth") && n >= 2 && a.all_positive())
        out.push_back(check_small_doubling_growth(a, cfg.c_growth));

    // per-s checks: full sweep for small sets, dyadic sample otherwise
    if (cfg.on("inclusion_sumset") || cfg.on("as_inclusion") || cfg.on("cs_step")) {
        FiniteSet d = diffset(a, a);
        std::vector<std::size_t> picks;
        if (n <= cfg.cs_sweep_cap) {
            for (std::size_t i = 0; i < d.size(); ++i) picks.push_back(i);
        } else {
            for (std::size_t step = 1; step < d.size(); step *= 2) picks.push_back(step - 1);
            picks.push_back(d.size() / 2);
            picks.push_back(d.size() - 1);
        }
        for (std::size_t i : picks) {
            const Rational& s = d[i];
            if (cfg.on("inclusion_sumset")) out.push_back(check_inclusion_sumset(a, s));
            if (cfg.on("as_inclusion")) out.push_back(check_As_inclusion(a, next.set, s));
            if (cfg.on("cs_step")) out.push_back(check_cs_step(a, next.set, s));
        }
    }

    // cross-set checks against the cyclic neighbor
    const FiniteSet& b = next.set;
    if (cfg.on("energy_convex_bound_cross")) {
        CheckResult r = check_energy_convex_bound(a, b, cfg.c_energy_bound);
        r.name = "energy_convex_bound_cross";
        out.push_back(std::move(r));
    }
    if (cfg.on("restricted_energy_bound_cross")) {
        CheckResult r = check_restricted_energy_bound(a, b);
        r.name = "restricted_energy_bound_cross";
        out.push_back(std::move(r));
    }
    if (cfg.on("fractional_energy_bound_cross") && n <= cfg.pair_cap && b.size() <= cfg.pair_cap) {
        CheckResult r = check_fractional_energy_bound(a, b);
        r.name = "fractional_energy_bound_cross";
        out.push_back(std::move(r));
    }
    if (cfg.on("tail_bound_cross")) {
        CheckResult r = check_tail_bound(a, b, cfg.c_tail);
        r.name = "tail_bound_cross";
        out.push_back(std::move(r));
    }
    if (cfg.on("pair_bounds") && n >= 2 && n <= cfg.pair_cap && b.size() >= 2 &&
        b.size() <= cfg.pair_cap) {
        out.push_back(check_mixed_pair_bound(a, b, '+', cfg.c_growth));
        out.push_back(check_mixed_pair_bound(a, b, '-', cfg.c_growth));
        out.push_back(check_diff_pair_bound(a, b, '+', cfg.c_growth));
        out.push_back(check_diff_pair_bound(a, b, '-', cfg.c_growth));
    }
    return out;
}

} // namespace detail

inline SuiteReport run_suite(const std::vector<CorpusMember>& corpus, const SuiteConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    SuiteReport report;
    report.corpus_desc = nlohmann::json::array();
    for (const auto& m : corpus)
        report.corpus_desc.push_back({{"index", m.index},
                                      {"family", m.label},
                                      {"n", m.set.size()},
                                      {"seed", m.spec.seed},
                                      {"convex", m.convex_expected}});

    std::vector<std::vector<CheckResult>> slots(corpus.size());
    parallel_for(corpus.size(), cfg.workers, [&](std::size_t i) {
        slots[i] = detail::member_checks(corpus[i], corpus[(i + 1) % corpus.size()], cfg);
        std::stable_sort(slots[i].begin(), slots[i].end(),
                         [](const CheckResult& l, const CheckResult& r) { return l.name < r.name; });
    });

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        for (auto& r : slots[i]) {
            SuiteEntry e;
            e.corpus_index = i;
            e.member = corpus[i].label + "/n=" + std::to_string(corpus[i].set.size());
            e.result = std::move(r);
            const CheckResult& res = e.result;
            auto it = report.max_ratios.find(res.name);
            if (std::isfinite(res.ratio) &&
                (it == report.max_ratios.end() || res.ratio > it->second))
                report.max_ratios[res.name] = res.ratio;
            switch (res.verdict) {
                case Verdict::holds: ++report.held; break;
                case Verdict::marginal: ++report.marginal; break;
                case Verdict::fails:
                    if (res.negative_control) {
                        ++report.control_failed;
                    } else {
                        ++report.failed;
                        int code = res.exact ? 2 : 3;
                        if (report.exit_code == 0 || code < report.exit_code)
                            report.exit_code = code;
                    }
                    break;
            }
            report.checks.push_back(std::move(e));
        }
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

// Canonical JSON form. Timing is deliberately omitted so reports compare
// byte-identically across worker counts and reruns.
inline nlohmann::json suite_report_to_json(const SuiteReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& e : report.checks) {
        nlohmann::json j = check_to_json(e.result);
        j["corpusIndex"] = e.corpus_index;
        j["member"] = e.member;
        checks.push_back(std::move(j));
    }
    return {{"corpus", report.corpus_desc},
            {"checks", checks},
            {"maxRatios", report.max_ratios},
            {"summary",
             {{"held", report.held},
              {"marginal", report.marginal},
              {"failed", report.failed},
              {"negativeControlFailed", report.control_failed},
              {"exitCode", report.exit_code}}}};
}

} // namespace convexsum
