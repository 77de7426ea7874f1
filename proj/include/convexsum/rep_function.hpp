#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "convexsum/errors.hpp"
#include "convexsum/finite_set.hpp"
#include "convexsum/rational.hpp"

namespace convexsum {

enum class RepKind { difference, sum };

// Sparse multiplicity map of a difference or sum table:
//   difference: delta_{A,B}(s) = #{(a,b) : a-b = s}
//   sum:        r_{A+B}(s)     = #{(a,b) : a+b = s}
// Entries are sorted by value; total mass is |A|*|B|.
struct RepFunction {
    RepKind kind = RepKind::difference;
    std::vector<std::pair<Rational, std::uint64_t>> entries;
    std::size_t size_a = 0;
    std::size_t size_b = 0;

    std::size_t support_size() const { return entries.size(); }

    std::uint64_t total_mass() const {
        std::uint64_t t = 0;
        for (const auto& e : entries) t += e.second;
        return t;
    }

    std::uint64_t max_multiplicity() const {
        std::uint64_t m = 0;
        for (const auto& e : entries) m = std::max(m, e.second);
        return m;
    }

    std::uint64_t count_at(const Rational& v) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), v,
                                   [](const auto& e, const Rational& x) { return e.first < x; });
        if (it == entries.end() || it->first != v) return 0;
        return it->second;
    }

    FiniteSet support() const {
        std::vector<Rational> vals;
        vals.reserve(entries.size());
        for (const auto& e : entries) vals.push_back(e.first);
        return FiniteSet::from_sorted_unique(std::move(vals));
    }
};

// Span cap for the dense (offset-indexed array) backend.
inline constexpr std::int64_t kDenseSpanLimit = std::int64_t(1) << 24;

// Reference backend: enumerate all pairs, sort, run-length encode.
// Works for arbitrary rationals in O(nm log nm).
inline RepFunction rep_sparse(const FiniteSet& a, const FiniteSet& b, RepKind kind) {
    detail::require_nonempty(a, "rep_function");
    detail::require_nonempty(b, "rep_function");
    RepFunction rep;
    rep.kind = kind;
    rep.size_a = a.size();
    rep.size_b = b.size();
    if (a.as_int64() && b.as_int64() && detail::int64_add_safe(a, b)) {
        const auto& av = *a.as_int64();
        const auto& bv = *b.as_int64();
        std::vector<std::int64_t> vals;
        vals.reserve(av.size() * bv.size());
        if (kind == RepKind::difference) {
            for (auto x : av)
                for (auto y : bv) vals.push_back(x - y);
        } else {
            for (auto x : av)
                for (auto y : bv) vals.push_back(x + y);
        }
        std::sort(vals.begin(), vals.end());
        for (std::size_t i = 0; i < vals.size();) {
            std::size_t j = i;
            while (j < vals.size() && vals[j] == vals[i]) ++j;
            rep.entries.emplace_back(Rational(static_cast<long long>(vals[i])),
                                     static_cast<std::uint64_t>(j - i));
            i = j;
        }
        return rep;
    }
    std::vector<Rational> vals;
    vals.reserve(a.size() * b.size());
    for (const auto& x : a.elements())
        for (const auto& y : b.elements())
            vals.push_back(kind == RepKind::difference ? x - y : x + y);
    std::sort(vals.begin(), vals.end());
    for (std::size_t i = 0; i < vals.size();) {
        std::size_t j = i;
        while (j < vals.size() && vals[j] == vals[i]) ++j;
        rep.entries.emplace_back(vals[i], static_cast<std::uint64_t>(j - i));
        i = j;
    }
    return rep;
}

// Fast backend for integer sets with a small span: exact machine-integer
// counts in an offset-indexed array. Returns nullopt when ineligible.
inline std::optional<RepFunction> rep_dense(const FiniteSet& a, const FiniteSet& b, RepKind kind) {
    detail::require_nonempty(a, "rep_function");
    detail::require_nonempty(b, "rep_function");
    if (!detail::int64_add_safe(a, b)) return std::nullopt; // sums/differences stay in range
    const auto& av = *a.as_int64();
    const auto& bv = *b.as_int64();
    std::int64_t lo, hi;
    if (kind == RepKind::difference) {
        lo = av.front() - bv.back();
        hi = av.back() - bv.front();
    } else {
        lo = av.front() + bv.front();
        hi = av.back() + bv.back();
    }
    if (hi - lo >= kDenseSpanLimit) return std::nullopt;
    std::vector<std::uint32_t> counts(static_cast<std::size_t>(hi - lo + 1), 0);
    if (kind == RepKind::difference) {
        for (auto x : av)
            for (auto y : bv) ++counts[static_cast<std::size_t>(x - y - lo)];
    } else {
        for (auto x : av)
            for (auto y : bv) ++counts[static_cast<std::size_t>(x + y - lo)];
    }
    RepFunction rep;
    rep.kind = kind;
    rep.size_a = av.size();
    rep.size_b = bv.size();
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i] != 0)
            rep.entries.emplace_back(Rational(static_cast<long long>(lo + static_cast<std::int64_t>(i))),
                                     static_cast<std::uint64_t>(counts[i]));
    return rep;
}

// Dispatcher: dense fast path when eligible AND the count array stays
// proportional to the pair work (a span-sized allocation would dominate for
// sparse-in-value sets like large squares), sparse reference otherwise.
inline RepFunction rep_function(const FiniteSet& a, const FiniteSet& b, RepKind kind) {
    if (a.as_int64() && b.as_int64()) {
        const auto& av = *a.as_int64();
        const auto& bv = *b.as_int64();
        std::int64_t span = kind == RepKind::difference
                                ? (av.back() - bv.front()) - (av.front() - bv.back())
                                : (av.back() + bv.back()) - (av.front() + bv.front());
        std::int64_t work = static_cast<std::int64_t>(av.size() * bv.size());
        if (span < kDenseSpanLimit && span <= 4 * work + 4096) {
            if (auto dense = rep_dense(a, b, kind)) return std::move(*dense);
        }
    }
    return rep_sparse(a, b, kind);
}

// Superlevel set {x in support : multiplicity(x) >= tau}, tau >= 1.
inline FiniteSet level_set(const RepFunction& rep, const Rational& tau) {
    if (tau < Rational(1)) throw InvalidParameter("level_set: tau must be >= 1");
    std::vector<Rational> vals;
    for (const auto& e : rep.entries)
        if (Rational(Integer(e.second)) >= tau) vals.push_back(e.first);
    if (vals.empty()) return FiniteSet::empty_set();
    return FiniteSet::from_sorted_unique(std::move(vals));
}

// One band of a dyadic decomposition of the multiplicity map.
// j = 0 is the low band {delta < lo_of_band_1}; j >= 1 is [delta*2^{j-1}, delta*2^j).
struct DyadicBand {
    int j = 0;
    Rational lo;  // inclusive for j >= 1; unused for the low band
    Rational hi;  // exclusive
    std::uint64_t count = 0;
    Integer mass; // sum of multiplicity^2 over the band
};

// Splits the support at delta and dyadically above it, mirroring the split
// "delta_{A,B}(s) < D" / ">= D" with bands [D*2^{j-1}, D*2^j).
inline std::vector<DyadicBand> dyadic_levels(const RepFunction& rep, const Rational& delta) {
    if (!(delta > Rational(0))) throw InvalidParameter("dyadic_levels: delta must be positive");
    int max_band = 0;
    {
        Rational hi = delta;
        Rational max_mult(Integer(rep.max_multiplicity()));
        while (max_mult >= hi) {
            hi *= Rational(2);
            ++max_band;
        }
    }
    std::vector<DyadicBand> bands(static_cast<std::size_t>(max_band) + 1);
    bands[0].j = 0;
    bands[0].hi = delta;
    bands[0].mass = 0;
    Rational lo = delta;
    for (int j = 1; j <= max_band; ++j) {
        bands[static_cast<std::size_t>(j)].j = j;
        bands[static_cast<std::size_t>(j)].lo = lo;
        bands[static_cast<std::size_t>(j)].hi = lo * Rational(2);
        bands[static_cast<std::size_t>(j)].mass = 0;
        lo *= Rational(2);
    }
    for (const auto& e : rep.entries) {
        Rational c(Integer(e.second));
        int j = 0;
        Rational hi = delta;
        while (c >= hi) {
            hi *= Rational(2);
            ++j;
        }
        auto& band = bands[static_cast<std::size_t>(j)];
        band.count += 1;
        band.mass += Integer(e.second) * Integer(e.second);
    }
    return bands;
}

} // namespace convexsum
