#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "convexsum/errors.hpp"
#include "convexsum/finite_set.hpp"
#include "convexsum/rational.hpp"

namespace convexsum {

// splitmix64: deterministic across platforms and standard-library versions.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), rejection-sampled
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    std::int64_t range(std::int64_t lo, std::int64_t hi) { // inclusive
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Exactly evaluable strictly convex function: x^2, x^3, a rational quadratic,
// or an explicit value table.
struct ConvexFunctionSpec {
    enum class Kind { power, quadratic, table };

    Kind kind = Kind::power;
    unsigned power = 2;
    Rational qa = Rational(1), qb = Rational(0), qc = Rational(0);
    std::vector<std::pair<Rational, Rational>> table; // sorted by argument

    static ConvexFunctionSpec square() { return {}; }

    static ConvexFunctionSpec cube() {
        ConvexFunctionSpec f;
        f.power = 3;
        return f;
    }

    static ConvexFunctionSpec quadratic(Rational a, Rational b, Rational c) {
        if (!(a > Rational(0))) throw InvalidParameter("quadratic spec needs a > 0");
        ConvexFunctionSpec f;
        f.kind = Kind::quadratic;
        f.qa = std::move(a);
        f.qb = std::move(b);
        f.qc = std::move(c);
        return f;
    }

    static ConvexFunctionSpec from_table(std::vector<std::pair<Rational, Rational>> entries) {
        if (entries.size() < 1) throw InvalidParameter("table spec needs entries");
        std::sort(entries.begin(), entries.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
        for (std::size_t i = 0; i + 1 < entries.size(); ++i)
            if (!(entries[i].first < entries[i + 1].first))
                throw InvalidParameter("table spec has duplicate arguments");
        ConvexFunctionSpec f;
        f.kind = Kind::table;
        f.table = std::move(entries);
        return f;
    }

    Rational eval(const Rational& x) const {
        switch (kind) {
            case Kind::power:
                return x.pow(power);
            case Kind::quadratic:
                return qa * x * x + qb * x + qc;
            case Kind::table: {
                auto it = std::lower_bound(table.begin(), table.end(), x,
                                           [](const auto& e, const Rational& v) { return e.first < v; });
                if (it == table.end() || it->first != x)
                    throw NotConvexOnDomain("table spec has no value at " + x.str());
                return it->second;
            }
        }
        throw InvalidParameter("bad function spec");
    }

    bool defined_at(const Rational& x) const {
        if (kind != Kind::table) return true;
        auto it = std::lower_bound(table.begin(), table.end(), x,
                                   [](const auto& e, const Rational& v) { return e.first < v; });
        return it != table.end() && it->first == x;
    }

    // Strict convexity on the actual evaluation points: consecutive divided
    // differences must strictly increase.
    void validate_convex_on(const std::vector<Rational>& sorted_args) const {
        std::optional<Rational> prev_slope;
        for (std::size_t i = 0; i + 1 < sorted_args.size(); ++i) {
            Rational slope =
                (eval(sorted_args[i + 1]) - eval(sorted_args[i])) / (sorted_args[i + 1] - sorted_args[i]);
            if (prev_slope && !(*prev_slope < slope))
                throw NotConvexOnDomain("second differences not positive near " + sorted_args[i].str());
            prev_slope = std::move(slope);
        }
    }

    std::string name() const {
        switch (kind) {
            case Kind::power:
                return power == 2 ? "square" : power == 3 ? "cube" : "power" + std::to_string(power);
            case Kind::quadratic:
                return "quadratic(" + qa.str() + "," + qb.str() + "," + qc.str() + ")";
            case Kind::table:
                return "table[" + std::to_string(table.size()) + "]";
        }
        return "?";
    }
};

// A = f(Z): exact evaluation, with convexity-on-domain and injectivity checks.
inline FiniteSet generate_f_of_z(const ConvexFunctionSpec& f, const FiniteSet& z) {
    detail::require_nonempty(z, "generate_f_of_z");
    f.validate_convex_on(z.elements());
    std::vector<Rational> vals;
    vals.reserve(z.size());
    for (const auto& x : z.elements()) vals.push_back(f.eval(x));
    std::sort(vals.begin(), vals.end());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
        throw NonInjective("generate_f_of_z: f collides on Z");
    return FiniteSet::from_sorted_unique(std::move(vals));
}

enum class Family {
    squares,
    cubes,
    quadratic,
    random_convex_gaps,
    ap,
    gp,
    ggp,
    f_of_z,
    random_uniform,
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::squares: return "squares";
        case Family::cubes: return "cubes";
        case Family::quadratic: return "quadratic";
        case Family::random_convex_gaps: return "random-convex-gaps";
        case Family::ap: return "ap";
        case Family::gp: return "gp";
        case Family::ggp: return "ggp";
        case Family::f_of_z: return "f-of-z";
        case Family::random_uniform: return "random";
    }
    return "?";
}

inline Family family_from_name(const std::string& s) {
    for (Family f : {Family::squares, Family::cubes, Family::quadratic, Family::random_convex_gaps,
                     Family::ap, Family::gp, Family::ggp, Family::f_of_z, Family::random_uniform})
        if (s == family_name(f)) return f;
    throw InvalidParameter("unknown family: " + s);
}

// Fully resolved description of one generated set. Generation is a pure
// function of this struct.
struct FamilySpec {
    Family family = Family::squares;
    std::size_t n = 0;
    std::uint64_t seed = 0;

    Rational qa = Rational(1), qb = Rational(0), qc = Rational(0); // quadratic
    Rational start = Rational(1), step = Rational(1);              // ap
    Rational ratio = Rational(2);                                  // gp
    std::vector<Rational> ratios;                                  // ggp, default {2,3}
    std::vector<std::size_t> dims;                                 // ggp box shape
    std::shared_ptr<ConvexFunctionSpec> f;                         // f_of_z, default square
    std::shared_ptr<FamilySpec> inner;                             // f_of_z base set Z
    std::int64_t range = 1000000;                                  // random_uniform

    std::string label() const {
        switch (family) {
            case Family::quadratic:
                return "quadratic(" + qa.str() + "," + qb.str() + "," + qc.str() + ")";
            case Family::ap:
                return "ap(" + start.str() + "," + step.str() + ")";
            case Family::gp:
                return "gp(" + ratio.str() + ")";
            case Family::ggp: {
                std::string s = "ggp(";
                for (std::size_t i = 0; i < ratios.size(); ++i)
                    s += (i ? "," : "") + ratios[i].str();
                s += ";";
                for (std::size_t i = 0; i < dims.size(); ++i)
                    s += (i ? "x" : "") + std::to_string(dims[i]);
                return s + ")";
            }
            case Family::f_of_z:
                return "f-of-z(" + (f ? f->name() : "square") + "," +
                       (inner ? inner->label() : "ap(1,1)") + ")";
            default:
                return family_name(family);
        }
    }

    // Whether the construction guarantees convexity.
    bool convex_by_construction() const {
        switch (family) {
            case Family::squares:
            case Family::cubes:
            case Family::quadratic:
            case Family::random_convex_gaps:
                return true;
            case Family::gp:
                return ratio > Rational(1); // geometric gaps strictly increase
            default:
                return false;
        }
    }
};

inline FiniteSet generate(const FamilySpec& spec) {
    if (spec.n < 1) throw InvalidParameter("generate: n must be >= 1");
    switch (spec.family) {
        case Family::squares: {
            std::vector<Rational> v;
            for (std::size_t i = 1; i <= spec.n; ++i) v.push_back(Rational(Integer(i)).pow(2));
            return FiniteSet::from_sorted_unique(std::move(v));
        }
        case Family::cubes: {
            std::vector<Rational> v;
            for (std::size_t i = 1; i <= spec.n; ++i) v.push_back(Rational(Integer(i)).pow(3));
            return FiniteSet::from_sorted_unique(std::move(v));
        }
        case Family::quadratic: {
            if (!(spec.qa > Rational(0))) throw InvalidParameter("quadratic family needs a > 0");
            if (!(spec.qa * Rational(3) + spec.qb > Rational(0)))
                throw InvalidParameter("quadratic family not increasing from i = 1");
            std::vector<Rational> v;
            for (std::size_t i = 1; i <= spec.n; ++i) {
                Rational x{Integer(i)};
                v.push_back(spec.qa * x * x + spec.qb * x + spec.qc);
            }
            return FiniteSet::from_sorted_unique(std::move(v));
        }
        case Family::random_convex_gaps: {
            // gaps drawn strictly increasing in gap space; convex by construction
            SplitMix64 rng(spec.seed);
            Integer cur = 1;
            std::vector<Rational> v{Rational(1)};
            Integer gap(static_cast<long>(rng.range(1, 4)));
            for (std::size_t i = 1; i < spec.n; ++i) {
                cur += gap;
                v.push_back(Rational(cur));
                gap += Integer(static_cast<long>(rng.range(1, 4)));
            }
            return FiniteSet::from_sorted_unique(std::move(v));
        }
        case Family::ap: {
            if (!(spec.step > Rational(0))) throw InvalidParameter("ap family needs step > 0");
            std::vector<Rational> v;
            Rational cur = spec.start;
            for (std::size_t i = 0; i < spec.n; ++i) {
                v.push_back(cur);
                cur += spec.step;
            }
            return FiniteSet::from_sorted_unique(std::move(v));
        }
        case Family::gp: {
            if (!(spec.ratio > Rational(1))) throw InvalidParameter("gp family needs ratio > 1");
            std::vector<Rational> v;
            Rational cur(1);
            for (std::size_t i = 0; i < spec.n; ++i) {
                v.push_back(cur);
                cur *= spec.ratio;
            }
            return FiniteSet::from_sorted_unique(std::move(v));
        }
        case Family::ggp: {
            std::vector<Rational> ratios = spec.ratios.empty()
                                               ? std::vector<Rational>{Rational(2), Rational(3)}
                                               : spec.ratios;
            if (spec.dims.size() != ratios.size())
                throw InvalidParameter("ggp family needs one dimension per ratio");
            std::size_t total = 1;
            for (auto d : spec.dims) {
                if (d < 1) throw InvalidParameter("ggp dimension must be >= 1");
                total *= d;
            }
            if (total != spec.n) throw InvalidParameter("ggp dims must multiply to n");
            for (const auto& r : ratios)
                if (!(r > Rational(1))) throw InvalidParameter("ggp ratios must be > 1");
            std::vector<Rational> v{Rational(1)};
            for (std::size_t j = 0; j < ratios.size(); ++j) {
                std::vector<Rational> next;
                Rational p(1);
                for (std::size_t e = 0; e < spec.dims[j]; ++e) {
                    for (const auto& base : v) next.push_back(base * p);
                    p *= ratios[j];
                }
                v = std::move(next);
            }
            std::sort(v.begin(), v.end());
            if (std::adjacent_find(v.begin(), v.end()) != v.end())
                throw InvalidParameter("ggp ratios are multiplicatively dependent on this box");
            return FiniteSet::from_sorted_unique(std::move(v));
        }
        case Family::f_of_z: {
            ConvexFunctionSpec f = spec.f ? *spec.f : ConvexFunctionSpec::square();
            FamilySpec zspec = spec.inner ? *spec.inner : FamilySpec{.family = Family::ap};
            if (zspec.n == 0) zspec.n = spec.n;
            FiniteSet z = generate(zspec);
            FiniteSet a = generate_f_of_z(f, z);
            if (a.size() != spec.n) throw InvalidParameter("f-of-z inner set size mismatch");
            return a;
        }
        case Family::random_uniform: {
            if (static_cast<std::int64_t>(spec.n) > spec.range)
                throw InvalidParameter("random family: n exceeds range");
            SplitMix64 rng(spec.seed);
            std::set<std::int64_t> raw;
            while (raw.size() < spec.n) raw.insert(rng.range(1, spec.range));
            std::vector<Rational> v;
            for (auto x : raw) v.push_back(Rational(Integer(static_cast<long>(x))));
            return FiniteSet::from_sorted_unique(std::move(v));
        }
    }
    throw InvalidParameter("generate: unknown family");
}

// One corpus element: the set plus its provenance labels.
struct CorpusMember {
    std::size_t index = 0;
    FamilySpec spec;
    FiniteSet set;
    std::string label;
    bool convex_expected = false;
};

inline std::vector<CorpusMember> build_corpus(const std::vector<FamilySpec>& specs) {
    std::vector<CorpusMember> out;
    out.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        CorpusMember m;
        m.index = i;
        m.spec = specs[i];
        m.set = generate(specs[i]);
        m.label = specs[i].label();
        m.convex_expected = specs[i].convex_by_construction();
        out.push_back(std::move(m));
    }
    return out;
}

struct CorpusConfig {
    std::uint64_t seed = 1;
    std::size_t n_cap = 4096;
    int random_reps = 3;
    std::optional<std::vector<std::size_t>> convex_grid; // override for convex families
};

// The standard mixed corpus: convex families on a grid, AP negative controls,
// small-multiplicative-doubling families, random sets. Deterministic in seed;
// randomized members draw per-member seeds seed^index.
inline std::vector<FamilySpec> default_corpus_specs(const CorpusConfig& cfg = {}) {
    std::vector<FamilySpec> specs;
    auto add = [&](FamilySpec s) {
        if (s.n <= cfg.n_cap) {
            s.seed = cfg.seed ^ static_cast<std::uint64_t>(specs.size());
            specs.push_back(std::move(s));
        }
    };
    std::vector<std::size_t> convex_grid = cfg.convex_grid.value_or(std::vector<std::size_t>{16, 64, 256});
    for (auto n : convex_grid) add({.family = Family::squares, .n = n});
    for (auto n : convex_grid)
        if (n <= 64) add({.family = Family::cubes, .n = n});
    add({.family = Family::quadratic, .n = 32, .qa = Rational(3, 2), .qb = Rational(1), .qc = Rational(0)});
    for (int rep = 0; rep < cfg.random_reps; ++rep) {
        add({.family = Family::random_convex_gaps, .n = 16});
        add({.family = Family::random_convex_gaps, .n = 64});
    }
    add({.family = Family::ap, .n = 64});
    add({.family = Family::ap, .n = 512});
    add({.family = Family::gp, .n = 32, .ratio = Rational(2)});
    add({.family = Family::gp, .n = 16, .ratio = Rational(3, 2)});
    {
        FamilySpec ggp{.family = Family::ggp, .n = 32};
        ggp.ratios = {Rational(2), Rational(3)};
        ggp.dims = {8, 4};
        add(std::move(ggp));
    }
    {
        FamilySpec foz{.family = Family::f_of_z, .n = 24};
        foz.f = std::make_shared<ConvexFunctionSpec>(ConvexFunctionSpec::cube());
        foz.inner = std::make_shared<FamilySpec>(FamilySpec{.family = Family::ap, .n = 24});
        add(std::move(foz));
    }
    for (int rep = 0; rep < cfg.random_reps; ++rep)
        add({.family = Family::random_uniform, .n = 32, .range = 4096});
    return specs;
}

} // namespace convexsum
