#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "convexsum/errors.hpp"
#include "convexsum/finite_set.hpp"
#include "convexsum/rational.hpp"
#include "convexsum/rep_function.hpp"

namespace convexsum {

namespace detail {

inline Integer u128_to_integer(unsigned __int128 v) {
    Integer out(static_cast<unsigned long>(v >> 64));
    out <<= 64;
    out += static_cast<unsigned long>(v & ~0ULL);
    return out;
}

// Merge-join over two sorted multiplicity maps; calls f(count_a, count_b)
// for every value present in both supports.
template <typename F>
void join_counts(const RepFunction& a, const RepFunction& b, F&& f) {
    std::size_t i = 0, j = 0;
    while (i < a.entries.size() && j < b.entries.size()) {
        if (a.entries[i].first < b.entries[j].first) {
            ++i;
        } else if (b.entries[j].first < a.entries[i].first) {
            ++j;
        } else {
            f(a.entries[i].second, b.entries[j].second);
            ++i;
            ++j;
        }
    }
}

} // namespace detail

namespace detail {

// E(A,B) by the single delta_{A,B} route; the workhorse for hot per-s loops
// where the three-route cross-check would recompute delta_B every call.
inline Integer energy_via_rep(const FiniteSet& a, const FiniteSet& b) {
    RepFunction d = rep_function(a, b, RepKind::difference);
    unsigned __int128 acc = 0;
    for (const auto& e : d.entries) acc += static_cast<unsigned __int128>(e.second) * e.second;
    return u128_to_integer(acc);
}

} // namespace detail

// The three formulations of E(A,B); equal for every pair of sets.
struct EnergyRoutes {
    Integer via_delta_product; // sum_s delta_A(s) * delta_B(s)
    Integer via_delta_square;  // sum_s delta_{A,B}(s)^2
    Integer via_rep_square;    // sum_s r_{A+B}(s)^2
};

inline EnergyRoutes energy_cross_routes(const FiniteSet& a, const FiniteSet& b) {
    EnergyRoutes out;
    {
        RepFunction da = rep_function(a, a, RepKind::difference);
        RepFunction db = rep_function(b, b, RepKind::difference);
        unsigned __int128 acc = 0;
        detail::join_counts(da, db, [&](std::uint64_t ca, std::uint64_t cb) {
            acc += static_cast<unsigned __int128>(ca) * cb;
        });
        out.via_delta_product = detail::u128_to_integer(acc);
    }
    {
        RepFunction dab = rep_function(a, b, RepKind::difference);
        unsigned __int128 acc = 0;
        for (const auto& e : dab.entries) acc += static_cast<unsigned __int128>(e.second) * e.second;
        out.via_delta_square = detail::u128_to_integer(acc);
    }
    {
        RepFunction rab = rep_function(a, b, RepKind::sum);
        unsigned __int128 acc = 0;
        for (const auto& e : rab.entries) acc += static_cast<unsigned __int128>(e.second) * e.second;
        out.via_rep_square = detail::u128_to_integer(acc);
    }
    return out;
}

// E(A,B), computed by all three routes and cross-checked.
inline Integer energy_cross(const FiniteSet& a, const FiniteSet& b) {
    EnergyRoutes r = energy_cross_routes(a, b);
    if (r.via_delta_product != r.via_delta_square || r.via_delta_square != r.via_rep_square)
        throw InternalMismatch("energy_cross: routes disagree: " + r.via_delta_product.get_str() +
                               " / " + r.via_delta_square.get_str() + " / " +
                               r.via_rep_square.get_str());
    return r.via_delta_product;
}

// E_k(A) = sum_s delta_A(s)^k for integer k >= 1.
inline Integer energy_k(const FiniteSet& a, unsigned k) {
    if (k < 1) throw InvalidParameter("energy_k: k must be >= 1");
    RepFunction da = rep_function(a, a, RepKind::difference);
    // delta <= n, so n^{k} * n^2 terms fit u128 whenever (k+2)*log2(n) < 120.
    double bits = (k + 2) * std::log2(static_cast<double>(a.size()) + 1.0);
    if (bits < 120.0) {
        unsigned __int128 acc = 0;
        for (const auto& e : da.entries) {
            unsigned __int128 p = 1;
            for (unsigned i = 0; i < k; ++i) p *= e.second;
            acc += p;
        }
        return detail::u128_to_integer(acc);
    }
    Integer acc = 0;
    for (const auto& e : da.entries) acc += integer_pow(Integer(static_cast<unsigned long>(e.second)), k);
    return acc;
}

// A binary64 value with a rigorous absolute error bound.
struct ValueWithBound {
    double value = 0.0;
    double bound = 0.0;
};

// E_{1.5}(A) = sum_s delta_A(s)^{3/2}, Neumaier-compensated in a fixed
// (value-sorted) order. The bound covers per-term sqrt/multiply rounding and
// the summation, so the true value lies within [value-bound, value+bound].
inline ValueWithBound energy_fractional(const FiniteSet& a) {
    RepFunction da = rep_function(a, a, RepKind::difference);
    double sum = 0.0, comp = 0.0, absum = 0.0;
    for (const auto& e : da.entries) {
        double c = static_cast<double>(e.second);
        double x = c * std::sqrt(c);
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
        absum += x;
    }
    ValueWithBound out;
    out.value = sum + comp;
    const double u = std::ldexp(1.0, -53);
    double n_terms = static_cast<double>(da.entries.size());
    out.bound = absum * (6.0 * u + 8.0 * n_terms * u * u) + std::numeric_limits<double>::denorm_min();
    return out;
}

// |A ∩ (A+s) ∩ (A+t) ∩ (A+s+t)|; equals delta_{A_s}(t) and delta_{A_t}(s).
inline std::uint64_t quad_intersection(const FiniteSet& a, const Rational& s, const Rational& t) {
    if (detail::int64_add_safe(a, a)) {
        auto sv = s.to_int64();
        auto tv = t.to_int64();
        if (sv && tv && std::llabs(*sv) < (INT64_C(1) << 61) && std::llabs(*tv) < (INT64_C(1) << 61)) {
            const auto& av = *a.as_int64();
            auto member = [&](std::int64_t x) {
                return std::binary_search(av.begin(), av.end(), x);
            };
            std::uint64_t count = 0;
            for (auto x : av)
                if (member(x - *sv) && member(x - *tv) && member(x - *sv - *tv)) ++count;
            return count;
        }
    }
    FiniteSet cur = shift_intersect(a, s);
    if (cur.empty()) return 0;
    cur = intersect(cur, translate(a, t));
    if (cur.empty()) return 0;
    cur = intersect(cur, translate(a, s + t));
    return cur.size();
}

inline constexpr std::size_t kRestrictedOracleThreshold = 24;

// sum_{s in A-A} E(A_s, B) via the quadratic form sum_t delta_A(t)^2 delta_B(t);
// for small inputs the literal quartic expansion is run alongside and must agree.
inline Integer restricted_energy_sum(const FiniteSet& a, const FiniteSet& b,
                                     std::size_t oracle_threshold = kRestrictedOracleThreshold) {
    detail::require_nonempty(a, "restricted_energy_sum");
    detail::require_nonempty(b, "restricted_energy_sum");
    RepFunction da = rep_function(a, a, RepKind::difference);
    RepFunction db = rep_function(b, b, RepKind::difference);
    unsigned __int128 acc = 0;
    detail::join_counts(da, db, [&](std::uint64_t ca, std::uint64_t cb) {
        acc += static_cast<unsigned __int128>(ca) * ca * cb;
    });
    Integer fast = detail::u128_to_integer(acc);
    if (a.size() <= oracle_threshold && b.size() <= oracle_threshold) {
        Integer literal = 0;
        for (const auto& e : da.entries)
            literal += detail::energy_via_rep(shift_intersect(a, e.first), b);
        if (literal != fast)
            throw InternalMismatch("restricted_energy_sum: fast form " + fast.get_str() +
                                   " != literal form " + literal.get_str());
    }
    return fast;
}

// Summary of the energies of one set, with the basic sanity ratios.
struct EnergyReport {
    std::size_t n = 0;
    std::size_t diff_support = 0;
    Integer e2;
    Integer e3;
    ValueWithBound e15;
    double e2_cs_slack = 0.0;   // E2 * |A-A| / |A|^4  (>= 1 by Cauchy-Schwarz)
    double e2_over_n3 = 0.0;    // E2 / |A|^3          (<= 1)
    double e3_over_n3log = 0.0; // E3 / (|A|^3 log2|A|)
};

inline EnergyReport energy_report(const FiniteSet& a) {
    detail::require_nonempty(a, "energy_report");
    EnergyReport rep;
    rep.n = a.size();
    RepFunction da = rep_function(a, a, RepKind::difference);
    rep.diff_support = da.support_size();
    rep.e2 = energy_cross(a, a);
    rep.e3 = energy_k(a, 3);
    rep.e15 = energy_fractional(a);
    Integer n(static_cast<unsigned long>(rep.n));
    Integer n2 = n * n;
    Integer n4 = n2 * n2;
    // |A|^2 <= E2 <= |A|^3 and E2 * |A-A| >= |A|^4 are theorems; a violation
    // is an engine bug.
    if (rep.e2 < n2 || rep.e2 > Integer(n2 * n))
        throw InternalMismatch("energy_report: E2 outside [n^2, n^3]");
    Integer cs = rep.e2 * Integer(static_cast<unsigned long>(rep.diff_support));
    if (cs < n4) throw InternalMismatch("energy_report: E2*|A-A| < |A|^4");
    Integer n3 = n2 * n;
    rep.e2_cs_slack = cs.get_d() / n4.get_d();
    rep.e2_over_n3 = rep.e2.get_d() / n3.get_d();
    double logn = std::log2(static_cast<double>(rep.n));
    rep.e3_over_n3log = logn > 0 ? rep.e3.get_d() / (n3.get_d() * logn)
                                 : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

} // namespace convexsum
