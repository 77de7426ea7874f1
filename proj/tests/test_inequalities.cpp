#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "convexsum/generators.hpp"
#include "convexsum/inequalities.hpp"
#include "oracles.hpp"

using namespace convexsum;
using oracle::fs;
using oracle::Q;

namespace {

FiniteSet random_int_set(std::mt19937_64& rng, int max_n, long long lo, long long hi) {
    std::uniform_int_distribution<int> size_d(2, max_n);
    std::uniform_int_distribution<long long> val_d(lo, hi);
    std::set<long long> raw;
    int n = size_d(rng);
    while (static_cast<int>(raw.size()) < n) raw.insert(val_d(rng));
    std::vector<Rational> vals;
    for (auto v : raw) vals.push_back(Q(v));
    return FiniteSet::from_values(vals);
}

} // namespace

TEST_CASE("energy identity check") {
    CheckResult r = check_energy_identity(fs({1, 2, 4}));
    CHECK(r.verdict == Verdict::holds);
    CHECK(r.exact);
    CHECK(r.lhs == "33");
    CHECK(r.rhs == "33");

    CheckResult single = check_energy_identity(fs({5}));
    CHECK(single.verdict == Verdict::holds);
    CHECK(single.lhs == "1");

    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        FiniteSet a = random_int_set(rng, 20, -100, 100);
        CHECK(check_energy_identity(a).verdict == Verdict::holds);
    }
}

TEST_CASE("inclusion checks") {
    CheckResult r = check_inclusion_sumset(fs({1, 2, 4}), Q(1));
    CHECK(r.verdict == Verdict::holds);
    CHECK(r.lhs == "4"); // |(A+A)_1| = |{3,4,5,6}|
    CHECK(r.rhs == "3"); // |A + A_1| = |{3,4,6}|

    CheckResult zero = check_inclusion_sumset(fs({1, 2, 4}), Q(0));
    CHECK(zero.verdict == Verdict::holds);
    CHECK(zero.lhs == zero.rhs);

    CheckResult two = check_inclusion_sumset(fs({1, 2, 3}), Q(2));
    CHECK(two.verdict == Verdict::holds);

    CHECK_THROWS_AS(check_inclusion_sumset(fs({1, 2, 4}), Q(100)), InvalidParameter);

    CheckResult as = check_As_inclusion(fs({1, 2, 4}), fs({1, 2, 4}), Q(1));
    CHECK(as.verdict == Verdict::holds);
    CHECK(as.lhs == "3");

    CheckResult as0 = check_As_inclusion(fs({1, 2, 4}), fs({3, 7}), Q(0));
    CHECK(as0.verdict == Verdict::holds); // A_0 + B = A + B = (A+B)_0
    CHECK(as0.lhs == as0.rhs);

    std::mt19937_64 rng(2);
    for (int i = 0; i < 30; ++i) {
        FiniteSet a = random_int_set(rng, 12, -50, 50);
        FiniteSet b = random_int_set(rng, 12, -50, 50);
        FiniteSet d = diffset(a, a);
        const Rational& s = d[d.size() / 3];
        CHECK(check_inclusion_sumset(a, s).verdict == Verdict::holds);
        CHECK(check_As_inclusion(a, b, s).verdict == Verdict::holds);
    }
}

TEST_CASE("restricted energy bound: cubed form, equality at B = A") {
    CheckResult same = check_restricted_energy_bound(fs({1, 2, 4}), fs({1, 2, 4}));
    CHECK(same.verdict == Verdict::holds);
    CHECK(same.lhs == same.rhs); // 33^3 both sides
    CHECK(same.witness["equality"] == true);

    CheckResult cross = check_restricted_energy_bound(fs({1, 2, 4}), fs({1, 2, 3}));
    CHECK(cross.verdict == Verdict::holds);
    CHECK(cross.exact);

    CheckResult single = check_restricted_energy_bound(fs({1}), fs({2, 3, 5}));
    CHECK(single.verdict == Verdict::holds);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 25; ++i) {
        FiniteSet a = random_int_set(rng, 12, -40, 40);
        FiniteSet b = random_int_set(rng, 12, -40, 40);
        CHECK(check_restricted_energy_bound(a, b).verdict == Verdict::holds);
        CheckResult self = check_restricted_energy_bound(a, a);
        CHECK(self.lhs == self.rhs);
    }
}

TEST_CASE("fractional energy bound: worked instance and corpus") {
    CheckResult r = check_fractional_energy_bound(fs({1, 2, 4}), fs({1, 2, 4}));
    CHECK(r.verdict == Verdict::holds);
    CHECK(r.rhs == "1320"); // 33 * 40
    CHECK(r.witness["restricted_sum"] == "33");
    CHECK(r.witness["energy_A_AplusB"] == "40");
    // LHS = (3*sqrt(3) + 6)^2 * 9
    double expect = std::pow(3.0 * std::sqrt(3.0) + 6.0, 2) * 9.0;
    CHECK(r.ratio == doctest::Approx(expect / 1320.0).epsilon(1e-12));

    CheckResult singleton = check_fractional_energy_bound(fs({5}), fs({1, 2}));
    CHECK(singleton.verdict != Verdict::fails); // equality case => holds or marginal

    std::mt19937_64 rng(4);
    for (int i = 0; i < 25; ++i) {
        FiniteSet a = random_int_set(rng, 12, -40, 40);
        FiniteSet b = random_int_set(rng, 12, -40, 40);
        CHECK(check_fractional_energy_bound(a, b).verdict != Verdict::fails);
    }
}

TEST_CASE("per-s Cauchy-Schwarz squared step") {
    CheckResult eq = check_cs_step(fs({1, 2, 4}), fs({1, 2, 4}), Q(1));
    CHECK(eq.verdict == Verdict::holds);
    CHECK(eq.lhs == "9");
    CHECK(eq.rhs == "9"); // equality: A_1 = {2}

    CheckResult zero = check_cs_step(fs({1, 2, 4}), fs({1, 2, 4}), Q(0));
    CHECK(zero.lhs == "243");
    CHECK(zero.rhs == "270");
    CHECK(zero.verdict == Verdict::holds);

    CheckResult tiny = check_cs_step(fs({3, 4}), fs({9}), Q(1));
    CHECK(tiny.verdict == Verdict::holds);

    CHECK_THROWS_AS(check_cs_step(fs({1, 2, 4}), fs({1}), Q(99)), EmptyRestriction);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        FiniteSet a = random_int_set(rng, 10, -30, 30);
        FiniteSet b = random_int_set(rng, 10, -30, 30);
        FiniteSet d = diffset(a, a);
        for (const auto& s : d.elements())
            CHECK(check_cs_step(a, b, s).verdict == Verdict::holds);
    }
}

TEST_CASE("cross energy bound on convex vs AP control") {
    CheckResult sidon = check_energy_convex_bound(fs({1, 4, 9, 16}), fs({1, 4, 9, 16}), Q(1));
    CHECK(sidon.verdict == Verdict::holds);
    CHECK(sidon.lhs == "784");  // 28^2
    CHECK(sidon.rhs == "1024"); // 16 * 64
    CHECK_FALSE(sidon.negative_control);

    FiniteSet ap = generate({.family = Family::ap, .n = 512});
    CheckResult control = check_energy_convex_bound(ap, ap, Q(1));
    CHECK(control.negative_control); // AP is not convex
    CHECK(control.verdict == Verdict::fails);
    CHECK(control.ratio > 1.0);

    CheckResult singleton = check_energy_convex_bound(fs({5}), fs({2, 4, 6}), Q(1));
    CHECK(singleton.verdict == Verdict::holds);
}

TEST_CASE("E3 log bound ratio check") {
    FiniteSet sq = generate({.family = Family::squares, .n = 64});
    CheckResult r = check_e3_log_bound(sq, Q(8));
    CHECK(r.verdict == Verdict::holds);
    CHECK_FALSE(r.negative_control);
    CHECK(r.ratio < 8.0);
    CHECK_THROWS_AS(check_e3_log_bound(fs({3}), Q(1)), InvalidParameter);
}

TEST_CASE("tail bound sweep") {
    FiniteSet sidon = fs({1, 4, 9, 16});
    CheckResult r = check_tail_bound(sidon, sidon, Q(1));
    CHECK(r.verdict == Verdict::holds);
    // tau = 2 entry: level set {0}, bare bound |A||B|^2/8 = 8
    bool saw_tau2 = false;
    for (const auto& row : r.witness["sweep"]) {
        if (row["tau"] == 2) {
            saw_tau2 = true;
            CHECK(row["level_size"] == 1);
            CHECK(row["ratio"] == doctest::Approx(1.0 / 8.0));
        }
    }
    CHECK(saw_tau2);

    // tau = 1 trivially holds at C >= 1 for any pair
    std::mt19937_64 rng(6);
    FiniteSet a = random_int_set(rng, 16, -99, 99);
    FiniteSet b = random_int_set(rng, 16, -99, 99);
    CheckResult any = check_tail_bound(a, b, Q(16));
    for (const auto& row : any.witness["sweep"])
        if (row["tau"] == 1) CHECK(double(row["ratio"]) <= 1.0);

    // explicit doubling witness M rescales the bound
    CheckResult with_m = check_tail_bound(sidon, sidon, Q(1), Rational(2));
    CHECK(with_m.name == "tail_bound_M");
    CHECK(with_m.ratio == doctest::Approx(r.ratio / 8.0));
}

TEST_CASE("e2_e15 claim and split inequality") {
    CheckResult r = check_e2_e15(fs({1, 2, 4}), Q(1));
    CHECK(r.verdict != Verdict::fails);
    CHECK(r.lhs == "3375"); // 15^3
    double bare = 27.0 * std::pow(3.0 * std::sqrt(3.0) + 6.0, 2);
    CHECK(r.ratio == doctest::Approx(3375.0 / bare).epsilon(1e-12));
    for (const auto& row : r.witness["split_sweep"]) CHECK(row["verdict"] != "fails");

    CheckResult singleton = check_e2_e15(fs({5}), Q(1));
    CHECK(singleton.verdict != Verdict::fails);

    FiniteSet ap = generate({.family = Family::ap, .n = 512});
    CheckResult control = check_e2_e15(ap, Q(1));
    CHECK(control.negative_control);
    CHECK(control.verdict == Verdict::fails);
    CHECK(control.ratio > 1.0);
    // the split inequality is convexity-free and must still hold
    for (const auto& row : control.witness["split_sweep"]) CHECK(row["verdict"] != "fails");
}

TEST_CASE("convex sumset growth check") {
    FiniteSet sq16 = generate({.family = Family::squares, .n = 16});
    CheckResult r = check_convex_sumset_growth(sq16, Q(1));
    CHECK(r.verdict == Verdict::holds);
    // 136 unordered pair sums, 14 of them with a second representation
    CHECK(r.lhs == "122");
    CHECK(sumset(sq16, sq16) == oracle::set_op(sq16, sq16, '+'));
    // bare RHS = 16^{14/9} / (log2 16)^{2/9} = 2^{52/9}
    CHECK(r.ratio == doctest::Approx(122.0 / std::pow(2.0, 52.0 / 9.0)).epsilon(1e-12));

    CheckResult two = check_convex_sumset_growth(fs({1, 2}), Q(1));
    CHECK(two.verdict == Verdict::holds); // 3 >= 2^{14/9} ~ 2.94

    CHECK_THROWS_AS(check_convex_sumset_growth(fs({7}), Q(1)), InvalidParameter);
}

TEST_CASE("small doubling growth check") {
    FiniteSet pow2 = generate({.family = Family::gp, .n = 32, .ratio = Q(2)});
    CheckResult r = check_small_doubling_growth(pow2, Q(1));
    CHECK(r.verdict == Verdict::holds);
    CHECK(r.witness["M"] == "63/32");
    CHECK(r.witness["sumset"] == "528");
    CHECK(double(r.witness["margin_plus"]) > 1.0);
    CHECK(double(r.witness["margin_minus"]) > 1.0);

    CHECK_THROWS_AS(check_small_doubling_growth(fs({-1, 2, 4}), Q(1)), NonpositiveElements);

    FiniteSet tiny = fs({1, 2});
    CheckResult t = check_small_doubling_growth(tiny, Q(1));
    CHECK(t.witness["M"] == "3/2");

    // rational ratio: gp(3/2) at n = 64 has |AA| = 2n-1 exactly
    FiniteSet g = generate({.family = Family::gp, .n = 64, .ratio = Q(3, 2)});
    CHECK(productset(g, g).size() == 127);
    CHECK(sumset(g, g).size() == 2080);  // all pair sums distinct
    CHECK(diffset(g, g).size() == 4033); // all nonzero differences distinct
    CheckResult gr = check_small_doubling_growth(g, Q(1));
    CHECK(gr.verdict == Verdict::holds);
    CHECK_FALSE(gr.negative_control); // M = 127/64 < 4
    CHECK(gr.witness["M"] == "127/64");

    // squares have large M: reported but non-gating
    CheckResult sq = check_small_doubling_growth(generate({.family = Family::squares, .n = 32}), Q(1));
    CHECK(sq.negative_control);
}

TEST_CASE("mixed and difference pair bounds") {
    FiniteSet a = fs({1, 2, 4});
    CheckResult plus = check_mixed_pair_bound(a, a, '+', Q(1));
    CHECK(plus.witness["premise_cs"] == "holds"); // 81 <= 90
    CHECK(plus.witness["premise_cs_lhs"] == "81");
    CHECK(plus.witness["premise_cs_rhs"] == "90");
    CHECK(plus.witness["premise_holder"] != "fails"); // 3375 <= ~4136
    CHECK(plus.verdict != Verdict::fails);

    CheckResult minus = check_mixed_pair_bound(a, a, '-', Q(1));
    CHECK(minus.witness["premise_cs"] == "holds"); // 81 <= 105
    CHECK(minus.verdict != Verdict::fails);

    CheckResult diff = check_diff_pair_bound(a, a, '+', Q(1));
    CHECK(diff.witness["premise_holder"] != "fails"); // 729 <= ~877
    CHECK(diff.verdict != Verdict::fails);

    CheckResult prem = check_diff_pair_bound(fs({5}), fs({5}), '-', Q(1));
    CHECK(prem.witness["premise_only"] == true);
    CHECK(prem.verdict != Verdict::fails);

    FiniteSet sq = generate({.family = Family::squares, .n = 64});
    FiniteSet cb = generate({.family = Family::cubes, .n = 64});
    for (char sign : {'+', '-'}) {
        CheckResult r = check_mixed_pair_bound(sq, cb, sign, Q(1));
        CHECK_FALSE(r.negative_control);
        CHECK(r.verdict != Verdict::fails);
        CheckResult d = check_diff_pair_bound(sq, cb, sign, Q(1));
        CHECK(d.verdict != Verdict::fails);
    }
}

TEST_CASE("verdicts are invariant under translation and positive dilation") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 6; ++i) {
        FiniteSet a = random_int_set(rng, 10, -30, 30);
        FiniteSet moved = translate(dilate(a, Q(7, 3)), Q(-11));
        CHECK(check_energy_convex_bound(a, a, Q(1)).verdict == check_energy_convex_bound(moved, moved, Q(1)).verdict);
        CHECK(check_restricted_energy_bound(a, a).verdict == check_restricted_energy_bound(moved, moved).verdict);
        CHECK(check_energy_identity(a).verdict == check_energy_identity(moved).verdict);
        CHECK(check_e2_e15(a, Q(1)).verdict == check_e2_e15(moved, Q(1)).verdict);
        // multiplicity maps are unchanged by affine moves, so even the
        // interval checks reproduce their verdicts bit-for-bit
        CHECK(check_fractional_energy_bound(a, a).verdict == check_fractional_energy_bound(moved, moved).verdict);
        CHECK(check_diff_pair_bound(a, a, '-', Q(1)).verdict ==
              check_diff_pair_bound(moved, moved, '-', Q(1)).verdict);
        CHECK(check_tail_bound(a, a, Q(16)).verdict == check_tail_bound(moved, moved, Q(16)).verdict);
        if (a.size() >= 2)
            CHECK(check_convex_sumset_growth(a, Q(1)).verdict == check_convex_sumset_growth(moved, Q(1)).verdict);
    }
}

TEST_CASE("negative control ratios grow with n for AP") {
    double prev23 = 0.0, prev15 = 0.0;
    for (std::size_t n : {64, 128, 256, 512}) {
        FiniteSet ap = generate({.family = Family::ap, .n = n});
        double r23 = check_energy_convex_bound(ap, ap, Q(1)).ratio;
        double r15 = check_e2_e15(ap, Q(1)).ratio;
        CHECK(r23 > prev23);
        CHECK(r15 > prev15);
        prev23 = r23;
        prev15 = r15;
    }
    CHECK(prev23 > 1.0);
    CHECK(prev15 > 1.0);
}

TEST_CASE("check result JSON shape") {
    CheckResult r = check_restricted_energy_bound(fs({1, 2, 4}), fs({1, 2, 4}));
    nlohmann::json j = check_to_json(r);
    CHECK(j["name"] == "restricted_energy_bound");
    CHECK(j["exact"] == true);
    CHECK(j["verdict"] == "holds");
    CHECK(j.contains("lhs"));
    CHECK(j.contains("ratio"));
}
