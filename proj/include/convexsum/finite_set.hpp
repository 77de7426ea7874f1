#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "convexsum/errors.hpp"
#include "convexsum/rational.hpp"

namespace convexsum {

// Witness of convexity: the n-1 consecutive gaps, strictly increasing and positive.
struct ConvexWitness {
    std::vector<Rational> gaps;
};

namespace detail {

// Shared across copies of a set; every fill writes a value that is a pure
// function of the elements, so concurrent fills are idempotent.
struct StatsCache {
    std::mutex mutex;
    std::optional<Rational> additive_doubling;       // |A+A|/|A|
    std::optional<Rational> multiplicative_doubling; // |AA|/|A|
    std::optional<bool> convex;
};

inline std::optional<std::vector<std::int64_t>> int64_projection(const std::vector<Rational>& elems) {
    std::vector<std::int64_t> out;
    out.reserve(elems.size());
    for (const auto& r : elems) {
        auto v = r.to_int64();
        if (!v) return std::nullopt;
        out.push_back(*v);
    }
    return out;
}

} // namespace detail

// Canonical finite set of exact rationals: strictly increasing, no duplicates.
// Immutable after construction; cheap to copy (cache shared, elements copied).
class FiniteSet {
public:
    FiniteSet() : cache_(std::make_shared<detail::StatsCache>()) {}

    // make_set: sorts and canonicalizes; strict mode rejects duplicates.
    static FiniteSet from_values(std::vector<Rational> values, bool strict = false) {
        if (values.empty()) throw EmptyInput("make_set: empty input");
        std::sort(values.begin(), values.end());
        auto dup = std::adjacent_find(values.begin(), values.end());
        if (dup != values.end()) {
            if (strict) throw DuplicateInStrictMode("make_set: duplicate value " + dup->str());
            values.erase(std::unique(values.begin(), values.end()), values.end());
        }
        return FiniteSet(std::move(values));
    }

    // Trusted constructor: `sorted` must already be strictly increasing.
    static FiniteSet from_sorted_unique(std::vector<Rational> sorted) {
        return FiniteSet(std::move(sorted));
    }

    static FiniteSet empty_set() { return FiniteSet(); }

    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const std::vector<Rational>& elements() const& { return elems_; }
    std::vector<Rational> elements() && { return std::move(elems_); }
    const Rational& operator[](std::size_t i) const { return elems_[i]; }
    const Rational& min() const { return elems_.front(); }
    const Rational& max() const { return elems_.back(); }

    bool contains(const Rational& v) const {
        return std::binary_search(elems_.begin(), elems_.end(), v);
    }

    // int64 view of the elements when every element is an integer in range.
    const std::optional<std::vector<std::int64_t>>& as_int64() const { return ints_; }

    bool all_positive() const { return !elems_.empty() && elems_.front().sign() > 0; }

    friend bool operator==(const FiniteSet& a, const FiniteSet& b) { return a.elems_ == b.elems_; }

    detail::StatsCache& cache() const { return *cache_; }

private:
    explicit FiniteSet(std::vector<Rational> sorted)
        : elems_(std::move(sorted)),
          ints_(detail::int64_projection(elems_)),
          cache_(std::make_shared<detail::StatsCache>()) {}

    std::vector<Rational> elems_;
    std::optional<std::vector<std::int64_t>> ints_;
    mutable std::shared_ptr<detail::StatsCache> cache_;
};

namespace detail {

inline void require_nonempty(const FiniteSet& s, const char* op) {
    if (s.empty()) throw EmptyInput(std::string(op) + ": empty input set");
}

// Pairwise combine + canonicalize. int64 fast path falls back to exact
// rationals on potential overflow.
template <typename Combine, typename CombineInt>
FiniteSet pairwise_set(const FiniteSet& a, const FiniteSet& b, Combine&& comb, CombineInt&& comb_int,
                       bool int_path_safe) {
    if (a.as_int64() && b.as_int64() && int_path_safe) {
        const auto& av = *a.as_int64();
        const auto& bv = *b.as_int64();
        std::vector<std::int64_t> vals;
        vals.reserve(av.size() * bv.size());
        for (auto x : av)
            for (auto y : bv) vals.push_back(comb_int(x, y));
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        std::vector<Rational> out;
        out.reserve(vals.size());
        for (auto v : vals) out.emplace_back(static_cast<long long>(v));
        return FiniteSet::from_sorted_unique(std::move(out));
    }
    std::vector<Rational> vals;
    vals.reserve(a.size() * b.size());
    for (const auto& x : a.elements())
        for (const auto& y : b.elements()) vals.push_back(comb(x, y));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return FiniteSet::from_sorted_unique(std::move(vals));
}

inline bool int64_add_safe(const FiniteSet& a, const FiniteSet& b) {
    if (!a.as_int64() || !b.as_int64()) return false;
    auto mag = [](const std::vector<std::int64_t>& v) {
        return std::max<std::int64_t>(std::llabs(v.front()), std::llabs(v.back()));
    };
    return mag(*a.as_int64()) < (INT64_C(1) << 62) - mag(*b.as_int64());
}

inline bool int64_mul_safe(const FiniteSet& a, const FiniteSet& b) {
    if (!a.as_int64() || !b.as_int64()) return false;
    auto mag = [](const std::vector<std::int64_t>& v) {
        return std::max<std::int64_t>(std::llabs(v.front()), std::llabs(v.back()));
    };
    std::int64_t ma = mag(*a.as_int64()), mb = mag(*b.as_int64());
    return ma < (INT64_C(1) << 31) && mb < (INT64_C(1) << 31);
}

} // namespace detail

// {a+b : a in A, b in B}
inline FiniteSet sumset(const FiniteSet& a, const FiniteSet& b) {
    detail::require_nonempty(a, "sumset");
    detail::require_nonempty(b, "sumset");
    return detail::pairwise_set(
        a, b, [](const Rational& x, const Rational& y) { return x + y; },
        [](std::int64_t x, std::int64_t y) { return x + y; }, detail::int64_add_safe(a, b));
}

// {a-b : a in A, b in B}
inline FiniteSet diffset(const FiniteSet& a, const FiniteSet& b) {
    detail::require_nonempty(a, "diffset");
    detail::require_nonempty(b, "diffset");
    return detail::pairwise_set(
        a, b, [](const Rational& x, const Rational& y) { return x - y; },
        [](std::int64_t x, std::int64_t y) { return x - y; }, detail::int64_add_safe(a, b));
}

// {a*b : a in A, b in B}
inline FiniteSet productset(const FiniteSet& a, const FiniteSet& b) {
    detail::require_nonempty(a, "productset");
    detail::require_nonempty(b, "productset");
    return detail::pairwise_set(
        a, b, [](const Rational& x, const Rational& y) { return x * y; },
        [](std::int64_t x, std::int64_t y) { return x * y; }, detail::int64_mul_safe(a, b));
}

// May return the empty set; callers treat emptiness as data, not an error.
inline FiniteSet intersect(const FiniteSet& a, const FiniteSet& b) {
    std::vector<Rational> out;
    std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(),
                          b.elements().end(), std::back_inserter(out));
    if (out.empty()) return FiniteSet::empty_set();
    return FiniteSet::from_sorted_unique(std::move(out));
}

inline FiniteSet translate(const FiniteSet& a, const Rational& c) {
    detail::require_nonempty(a, "translate");
    std::vector<Rational> out;
    out.reserve(a.size());
    for (const auto& x : a.elements()) out.push_back(x + c);
    return FiniteSet::from_sorted_unique(std::move(out));
}

inline FiniteSet dilate(const FiniteSet& a, const Rational& lambda) {
    detail::require_nonempty(a, "dilate");
    if (lambda.sign() == 0) throw ZeroDilation();
    std::vector<Rational> out;
    out.reserve(a.size());
    for (const auto& x : a.elements()) out.push_back(lambda * x);
    if (lambda.sign() < 0) std::reverse(out.begin(), out.end());
    return FiniteSet::from_sorted_unique(std::move(out));
}

// A_s = A ∩ (A+s). |A_s| = delta_A(s). Empty result allowed.
inline FiniteSet shift_intersect(const FiniteSet& a, const Rational& s) {
    detail::require_nonempty(a, "shift_intersect");
    if (s.sign() == 0) return a;
    return intersect(a, translate(a, s));
}

struct ConvexityResult {
    bool convex = false;
    std::optional<ConvexWitness> witness;
};

// A set is convex iff its consecutive gaps strictly increase; sets of size
// <= 2 are convex vacuously.
inline ConvexityResult is_convex(const FiniteSet& a) {
    detail::require_nonempty(a, "is_convex");
    ConvexWitness w;
    w.gaps.reserve(a.size() - 1);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        Rational g = a[i + 1] - a[i];
        if (!w.gaps.empty() && !(w.gaps.back() < g)) ok = false;
        w.gaps.push_back(std::move(g));
    }
    {
        std::lock_guard<std::mutex> lock(a.cache().mutex);
        a.cache().convex = ok;
    }
    if (!ok) return {};
    return {true, std::move(w)};
}

// |A+A|/|A|, cached after first computation.
inline Rational additive_doubling(const FiniteSet& a) {
    detail::require_nonempty(a, "additive_doubling");
    {
        std::lock_guard<std::mutex> lock(a.cache().mutex);
        if (a.cache().additive_doubling) return *a.cache().additive_doubling;
    }
    Rational value(Integer(sumset(a, a).size()), Integer(a.size()));
    std::lock_guard<std::mutex> lock(a.cache().mutex);
    a.cache().additive_doubling = value;
    return value;
}

// |AA|/|A|, cached; requires strictly positive elements.
inline Rational multiplicative_doubling(const FiniteSet& a) {
    detail::require_nonempty(a, "multiplicative_doubling");
    if (!a.all_positive()) throw NonpositiveElements("multiplicative_doubling: elements must be positive");
    {
        std::lock_guard<std::mutex> lock(a.cache().mutex);
        if (a.cache().multiplicative_doubling) return *a.cache().multiplicative_doubling;
    }
    Rational value(Integer(productset(a, a).size()), Integer(a.size()));
    std::lock_guard<std::mutex> lock(a.cache().mutex);
    a.cache().multiplicative_doubling = value;
    return value;
}

} // namespace convexsum
