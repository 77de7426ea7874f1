#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "convexsum/generators.hpp"
#include "convexsum/json_io.hpp"
#include "oracles.hpp"

using namespace convexsum;
using oracle::fs;
using oracle::Q;

TEST_CASE("structured families") {
    CHECK(generate({.family = Family::squares, .n = 4}) == fs({1, 4, 9, 16}));
    CHECK(generate({.family = Family::cubes, .n = 3}) == fs({1, 8, 27}));
    CHECK(generate({.family = Family::ap, .n = 5}) == fs({1, 2, 3, 4, 5}));
    FamilySpec ap2{.family = Family::ap, .n = 3};
    ap2.start = Q(10);
    ap2.step = Q(7);
    CHECK(generate(ap2) == fs({10, 17, 24}));

    FiniteSet gp = generate({.family = Family::gp, .n = 5, .ratio = Q(2)});
    CHECK(gp == fs({1, 2, 4, 8, 16}));
    CHECK(productset(gp, gp).size() == 9); // 2n-1

    FamilySpec quad{.family = Family::quadratic, .n = 4};
    quad.qa = Q(1);
    quad.qb = Q(1);
    quad.qc = Q(0);
    CHECK(generate(quad) == fs({2, 6, 12, 20})); // i^2 + i
}

TEST_CASE("gp with rational ratio stays exact") {
    FiniteSet g = generate({.family = Family::gp, .n = 4, .ratio = Q(3, 2)});
    CHECK(g[0] == Q(1));
    CHECK(g[3] == Q(27, 8));
    CHECK(is_convex(g).convex);
}

TEST_CASE("random convex gaps are convex by construction") {
    FiniteSet a = generate({.family = Family::random_convex_gaps, .n = 16, .seed = 7});
    CHECK(a.size() == 16);
    auto conv = is_convex(a);
    CHECK(conv.convex);
    // gap increments lie in [1,4]
    const auto& gaps = conv.witness->gaps;
    CHECK(gaps.front() >= Q(1));
    CHECK(gaps.front() <= Q(4));
    for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
        Rational inc = gaps[i + 1] - gaps[i];
        CHECK(inc >= Q(1));
        CHECK(inc <= Q(4));
    }
}

TEST_CASE("generation is deterministic in (spec, seed)") {
    FamilySpec spec{.family = Family::random_uniform, .n = 20, .seed = 42};
    spec.range = 10000;
    CHECK(generate(spec) == generate(spec));
    {
        // byte-identical JSON for identical (spec, seed)
        nlohmann::json a = set_to_json(generate(spec));
        nlohmann::json b = set_to_json(generate(spec));
        CHECK(a.dump() == b.dump());
    }
    FamilySpec other = spec;
    other.seed = 43;
    CHECK(!(generate(other) == generate(spec)));

    FamilySpec rcg{.family = Family::random_convex_gaps, .n = 12, .seed = 5};
    CHECK(generate(rcg) == generate(rcg));
}

TEST_CASE("generate_f_of_z") {
    CHECK(generate_f_of_z(ConvexFunctionSpec::square(), fs({1, 2, 3})) == fs({1, 4, 9}));

    // f = x^2 on an AP reproduces the squares family
    FiniteSet z = generate({.family = Family::ap, .n = 10});
    CHECK(generate_f_of_z(ConvexFunctionSpec::square(), z) ==
          generate({.family = Family::squares, .n = 10}));

    // exact rationals through x^3
    FiniteSet zq = oracle::fsq({Q(1), Q(3, 2), Q(2)});
    FiniteSet a = generate_f_of_z(ConvexFunctionSpec::cube(), zq);
    CHECK(a == oracle::fsq({Q(1), Q(27, 8), Q(8)}));

    // x^3 is not convex across negative arguments
    CHECK_THROWS_AS(generate_f_of_z(ConvexFunctionSpec::cube(), fs({-2, -1, 0, 1})),
                    NotConvexOnDomain);
    // x^2 collides on symmetric points
    CHECK_THROWS_AS(generate_f_of_z(ConvexFunctionSpec::square(), fs({-1, 1})), NonInjective);
}

TEST_CASE("table function spec") {
    auto f = ConvexFunctionSpec::from_table({{Q(1), Q(1)}, {Q(2), Q(3)}, {Q(3), Q(7)}});
    CHECK(f.eval(Q(2)) == Q(3));
    CHECK(generate_f_of_z(f, fs({1, 2, 3})) == fs({1, 3, 7}));
    CHECK_THROWS_AS(f.eval(Q(5)), NotConvexOnDomain);

    auto flat = ConvexFunctionSpec::from_table({{Q(1), Q(1)}, {Q(2), Q(2)}, {Q(3), Q(3)}});
    CHECK_THROWS_AS(generate_f_of_z(flat, fs({1, 2, 3})), NotConvexOnDomain);
}

TEST_CASE("ggp exponent box") {
    FamilySpec spec{.family = Family::ggp, .n = 32};
    spec.ratios = {Q(2), Q(3)};
    spec.dims = {8, 4};
    FiniteSet a = generate(spec);
    CHECK(a.size() == 32);
    CHECK(a.min() == Q(1));
    CHECK(a.max() == Q(128 * 27));
    // |AA| = prod(2k_i - 1) exactly for independent ratios
    CHECK(productset(a, a).size() == 15 * 7);

    FamilySpec bad = spec;
    bad.ratios = {Q(2), Q(4)}; // 4 = 2^2, dependent
    CHECK_THROWS_AS(generate(bad), InvalidParameter);

    FamilySpec mismatched = spec;
    mismatched.dims = {8, 3};
    CHECK_THROWS_AS(generate(mismatched), InvalidParameter);
}

TEST_CASE("invalid parameters") {
    FamilySpec ap{.family = Family::ap, .n = 4};
    ap.step = Q(0);
    CHECK_THROWS_AS(generate(ap), InvalidParameter);

    CHECK_THROWS_AS(generate({.family = Family::gp, .n = 4, .ratio = Q(1)}), InvalidParameter);

    FamilySpec quad{.family = Family::quadratic, .n = 4};
    quad.qa = Q(-1);
    CHECK_THROWS_AS(generate(quad), InvalidParameter);

    FamilySpec rnd{.family = Family::random_uniform, .n = 100};
    rnd.range = 10;
    CHECK_THROWS_AS(generate(rnd), InvalidParameter);

    CHECK_THROWS_AS(generate({.family = Family::squares, .n = 0}), InvalidParameter);
}

TEST_CASE("default corpus") {
    auto specs = default_corpus_specs();
    auto corpus = build_corpus(specs);
    CHECK(corpus.size() >= 15);

    bool has_squares_256 = false, has_ap_512 = false, has_gp_32 = false;
    for (const auto& m : corpus) {
        CHECK(m.set.size() == m.spec.n); // size exactness
        if (m.convex_expected) CHECK(is_convex(m.set).convex);
        // |A+A| = 2n-1 exactly for APs and only for them
        if (m.set.size() >= 3 && m.set.size() <= 256) {
            bool extremal = sumset(m.set, m.set).size() == 2 * m.set.size() - 1;
            CHECK(extremal == (m.spec.family == Family::ap));
        }
        if (m.spec.family == Family::squares && m.spec.n == 256) has_squares_256 = true;
        if (m.spec.family == Family::ap && m.spec.n == 512) has_ap_512 = true;
        if (m.spec.family == Family::gp && m.spec.n == 32) has_gp_32 = true;
    }
    CHECK(has_squares_256);
    CHECK(has_ap_512);
    CHECK(has_gp_32);

    // deterministic under seed; structured members survive a seed change
    auto corpus2 = build_corpus(default_corpus_specs());
    REQUIRE(corpus2.size() == corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) CHECK(corpus2[i].set == corpus[i].set);

    CorpusConfig other;
    other.seed = 99;
    auto corpus3 = build_corpus(default_corpus_specs(other));
    bool random_changed = false;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (corpus[i].spec.family == Family::squares) CHECK(corpus3[i].set == corpus[i].set);
        if (corpus[i].spec.family == Family::random_uniform && !(corpus3[i].set == corpus[i].set))
            random_changed = true;
    }
    CHECK(random_changed);

    // n-grid override respected
    CorpusConfig small;
    small.convex_grid = std::vector<std::size_t>{8};
    for (const auto& m : build_corpus(default_corpus_specs(small)))
        if (m.spec.family == Family::squares) CHECK(m.spec.n == 8);
}
