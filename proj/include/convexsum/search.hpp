#pragma once

// Simulated-annealing search over convex gap sequences for sets with a small
// normalized sumset (or difference set). Moves stay in gap space, so every
// visited set is convex by construction.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "convexsum/errors.hpp"
#include "convexsum/finite_set.hpp"
#include "convexsum/generators.hpp"

namespace convexsum {

enum class SearchObjective { plus_ratio, minus_ratio };

inline const char* objective_name(SearchObjective o) {
    return o == SearchObjective::plus_ratio ? "plus-ratio" : "minus-ratio";
}

inline SearchObjective objective_from_name(const std::string& s) {
    if (s == "plus-ratio") return SearchObjective::plus_ratio;
    if (s == "minus-ratio") return SearchObjective::minus_ratio;
    throw InvalidObjective("unknown objective: " + s + " (want plus-ratio or minus-ratio)");
}

struct AcceptedMove {
    std::size_t iteration = 0;
    std::size_t gap_index = 0;
    int delta = 0;
    double objective = 0.0;
};

struct SearchState {
    std::size_t n = 0;
    SearchObjective objective_kind = SearchObjective::plus_ratio;
    std::vector<std::int64_t> gaps; // strictly increasing positive integers
    double objective = 0.0;
    std::vector<std::int64_t> best_gaps;
    double best_objective = 0.0;
    std::uint64_t rng_state = 0;
    double t0 = 0.0;
    std::size_t iterations = 0;
    std::size_t accepted = 0;
    std::vector<AcceptedMove> trace;

    FiniteSet set_from(const std::vector<std::int64_t>& g) const {
        std::vector<Rational> v;
        v.reserve(g.size() + 1);
        std::int64_t cur = 1;
        v.emplace_back(static_cast<long long>(cur));
        for (auto gap : g) {
            cur += gap;
            v.emplace_back(static_cast<long long>(cur));
        }
        return FiniteSet::from_sorted_unique(std::move(v));
    }

    FiniteSet current_set() const { return set_from(gaps); }
    FiniteSet best_set() const { return set_from(best_gaps); }
};

struct SearchOptions {
    std::size_t iterations = 10000;
    std::uint64_t seed = 1;
    double t0 = -1.0;       // < 0: probe-calibrated; 0: plain hill climb
    double cooling = 0.999; // geometric schedule T_k = T0 * cooling^k
    bool record_trace = true;
};

namespace detail {

// |A+A| or |A-A| over int64 elements, by sort-unique of the pair table.
inline std::size_t pair_set_size(const std::vector<std::int64_t>& elems, bool plus) {
    std::vector<std::int64_t> vals;
    vals.reserve(elems.size() * (elems.size() + 1) / 2);
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = plus ? i : i + 1; j < elems.size(); ++j)
            vals.push_back(plus ? elems[i] + elems[j] : elems[j] - elems[i]);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return plus ? vals.size() : 2 * vals.size() + 1; // differences: symmetric plus zero
}

inline double gap_objective(const std::vector<std::int64_t>& gaps, SearchObjective kind) {
    std::vector<std::int64_t> elems;
    elems.reserve(gaps.size() + 1);
    std::int64_t cur = 1;
    elems.push_back(cur);
    for (auto g : gaps) {
        cur += g;
        elems.push_back(cur);
    }
    double n = static_cast<double>(elems.size());
    double logn = std::log2(n);
    if (kind == SearchObjective::plus_ratio) {
        double size = static_cast<double>(pair_set_size(elems, true));
        return size * std::pow(logn, 2.0 / 9.0) / std::pow(n, 14.0 / 9.0);
    }
    double size = static_cast<double>(pair_set_size(elems, false));
    return size * std::pow(logn, 2.0 / 5.0) / std::pow(n, 8.0 / 5.0);
}

inline bool gap_move_valid(const std::vector<std::int64_t>& gaps, std::size_t i, int delta) {
    std::int64_t g = gaps[i] + delta;
    if (g < 1) return false;
    if (i > 0 && !(gaps[i - 1] < g)) return false;
    if (i + 1 < gaps.size() && !(g < gaps[i + 1])) return false;
    return true;
}

} // namespace detail

// Anneals over gap space starting from the squares-like seed (3,5,7,...).
// Deterministic in (n, objective, options): the RNG is consumed in a fixed
// pattern and ties in the Metropolis comparison reject.
inline SearchState extremal_search(std::size_t n, SearchObjective kind,
                                   const SearchOptions& opt = {}) {
    if (n < 3) throw InvalidParameter("extremal_search: n must be >= 3");
    SearchState st;
    st.n = n;
    st.objective_kind = kind;
    st.gaps.resize(n - 1);
    for (std::size_t i = 0; i < n - 1; ++i) st.gaps[i] = static_cast<std::int64_t>(2 * i + 3);
    st.objective = detail::gap_objective(st.gaps, kind);
    st.best_gaps = st.gaps;
    st.best_objective = st.objective;

    // temperature calibration on a throwaway probe chain
    double t0 = opt.t0;
    if (t0 < 0.0) {
        SplitMix64 probe_rng(opt.seed ^ 0x7e3a9d11c0ffee00ULL);
        std::vector<double> uphill;
        for (int probe = 0; probe < 100; ++probe) {
            std::size_t i = static_cast<std::size_t>(probe_rng.below(st.gaps.size()));
            int delta = probe_rng.below(2) == 0 ? 1 : -1;
            if (!detail::gap_move_valid(st.gaps, i, delta)) continue;
            std::vector<std::int64_t> trial = st.gaps;
            trial[i] += delta;
            double diff = detail::gap_objective(trial, kind) - st.objective;
            if (diff > 0) uphill.push_back(diff);
        }
        if (uphill.empty()) {
            t0 = 1.0;
        } else {
            std::sort(uphill.begin(), uphill.end());
            t0 = uphill[uphill.size() / 2] / std::log(2.0); // median accepted with p = 1/2
        }
    }
    st.t0 = t0;

    SplitMix64 rng(opt.seed);
    double temperature = t0;
    for (std::size_t k = 0; k < opt.iterations; ++k) {
        std::size_t i = static_cast<std::size_t>(rng.below(st.gaps.size()));
        int delta = rng.below(2) == 0 ? 1 : -1;
        if (detail::gap_move_valid(st.gaps, i, delta)) {
            std::vector<std::int64_t> trial = st.gaps;
            trial[i] += delta;
            double obj = detail::gap_objective(trial, kind);
            double diff = obj - st.objective;
            bool accept = false;
            if (diff < 0.0) {
                accept = true;
            } else if (diff > 0.0 && temperature > 0.0) {
                accept = rng.unit() < std::exp(-diff / temperature);
            } // diff == 0 rejects
            if (accept) {
                st.gaps = std::move(trial);
                st.objective = obj;
                ++st.accepted;
                if (opt.record_trace) st.trace.push_back({k, i, delta, obj});
                if (obj < st.best_objective) {
                    st.best_objective = obj;
                    st.best_gaps = st.gaps;
                }
            }
        }
        temperature *= opt.cooling;
        ++st.iterations;
    }
    st.rng_state = rng.state;
    return st;
}

} // namespace convexsum
