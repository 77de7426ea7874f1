#pragma once

// Executable forms of the energy identities and sumset inequalities for
// convex / small-doubling sets: exact arbitrary-precision comparisons where
// the algebra allows (cubed or squared rearrangements), interval comparisons
// where E_{1.5} appears, and configurable-constant ratio checks for the
// asymptotic statements.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "convexsum/check.hpp"
#include "convexsum/energy.hpp"
#include "convexsum/errors.hpp"
#include "convexsum/finite_set.hpp"
#include "convexsum/rep_function.hpp"

namespace convexsum {

namespace detail {

inline bool convex_flag(const FiniteSet& a) { return is_convex(a).convex; }

inline void require_size2(const FiniteSet& a, const char* check) {
    if (a.size() < 2)
        throw InvalidParameter(std::string(check) + ": needs |A| >= 2 (log|A| in the bound)");
}

inline CheckResult exact_compare(std::string name, const Rational& lhs, const Rational& rhs,
                                 bool leq, std::string constant = {}) {
    CheckResult out;
    out.name = std::move(name);
    out.lhs = lhs.str();
    out.rhs = rhs.str();
    out.exact = true;
    out.constant = std::move(constant);
    bool ok = leq ? lhs <= rhs : lhs >= rhs;
    out.verdict = ok ? Verdict::holds : Verdict::fails;
    out.ratio = safe_ratio(lhs.to_double(), rhs.to_double());
    return out;
}

} // namespace detail

// Eq-style energy identity: E3(A) = sum_{s in A-A} E(A, A_s), exact.
// Each A_s is materialized and its E(A, A_s) = sum_d delta_A(d) delta_{A_s}(d)
// evaluated on its own pair table, so the right side never collapses through
// the sum_d delta^3 algebra it is checking. A failing verdict signals an
// engine bug, never a property of A.
inline CheckResult check_energy_identity(const FiniteSet& a) {
    detail::require_nonempty(a, "check_energy_identity");
    Integer lhs = energy_k(a, 3);
    RepFunction da = rep_function(a, a, RepKind::difference);
    Integer rhs = 0;
    if (a.as_int64() && detail::int64_add_safe(a, a)) {
        // flat int64 kernel with reused buffers; values of delta_A are safe
        // differences of in-range elements
        const auto& av = *a.as_int64();
        std::vector<std::int64_t> dvals(da.entries.size());
        std::vector<std::uint64_t> dcounts(da.entries.size());
        for (std::size_t i = 0; i < da.entries.size(); ++i) {
            dvals[i] = *da.entries[i].first.to_int64();
            dcounts[i] = da.entries[i].second;
        }
        std::vector<std::int64_t> as_elems, pairs;
        unsigned __int128 total = 0;
        for (std::int64_t s : dvals) {
            as_elems.clear();
            std::size_t i = 0, j = 0;
            while (i < av.size() && j < av.size()) { // A ∩ (A+s) by merge
                std::int64_t shifted = av[j] + s;
                if (av[i] == shifted) {
                    as_elems.push_back(av[i]);
                    ++i;
                    ++j;
                } else if (av[i] < shifted) {
                    ++i;
                } else {
                    ++j;
                }
            }
            pairs.clear();
            for (auto x : as_elems)
                for (auto y : as_elems) pairs.push_back(x - y);
            std::sort(pairs.begin(), pairs.end());
            // join the run-length encoding of delta_{A_s} against delta_A
            std::size_t di = 0;
            for (std::size_t p = 0; p < pairs.size();) {
                std::size_t q = p;
                while (q < pairs.size() && pairs[q] == pairs[p]) ++q;
                while (di < dvals.size() && dvals[di] < pairs[p]) ++di;
                total += static_cast<unsigned __int128>(dcounts[di]) *
                         static_cast<unsigned __int128>(q - p);
                p = q;
            }
        }
        rhs = detail::u128_to_integer(total);
    } else {
        for (const auto& entry : da.entries) {
            FiniteSet as = shift_intersect(a, entry.first);
            RepFunction das = rep_function(as, as, RepKind::difference);
            unsigned __int128 acc = 0;
            detail::join_counts(da, das, [&](std::uint64_t ca, std::uint64_t cas) {
                acc += static_cast<unsigned __int128>(ca) * cas;
            });
            rhs += detail::u128_to_integer(acc);
        }
    }
    CheckResult out;
    out.name = "energy_identity";
    out.lhs = lhs.get_str();
    out.rhs = rhs.get_str();
    out.exact = true;
    out.verdict = lhs == rhs ? Verdict::holds : Verdict::fails;
    out.ratio = detail::safe_ratio(lhs.get_d(), rhs.get_d());
    return out;
}

// |(A+A) ∩ (A+A+s)| >= |A + A_s|, plus the stronger inclusion
// A_s + A ⊆ (A+A)_s which implies it.
inline CheckResult check_inclusion_sumset(const FiniteSet& a, const Rational& s) {
    FiniteSet as = shift_intersect(a, s);
    if (as.empty()) throw InvalidParameter("check_inclusion_sumset: s must lie in A-A");
    FiniteSet aa = sumset(a, a);
    FiniteSet aas = shift_intersect(aa, s);
    FiniteSet a_plus_as = sumset(as, a);

    CheckResult out = detail::exact_compare("inclusion_sumset",
                                            Rational(Integer(aas.size())),
                                            Rational(Integer(a_plus_as.size())), /*leq=*/false);
    for (const auto& x : a_plus_as.elements()) {
        if (!aas.contains(x)) {
            out.verdict = Verdict::fails;
            out.witness = {{"violating_element", x.str()}, {"s", s.str()}};
            break;
        }
    }
    return out;
}

// A_s + B ⊆ (A+B)_s, elementwise.
inline CheckResult check_As_inclusion(const FiniteSet& a, const FiniteSet& b, const Rational& s) {
    FiniteSet as = shift_intersect(a, s);
    if (as.empty()) throw InvalidParameter("check_As_inclusion: s must lie in A-A");
    FiniteSet lhs_set = sumset(as, b);
    FiniteSet rhs_set = shift_intersect(sumset(a, b), s);
    CheckResult out;
    out.name = "as_inclusion";
    out.lhs = Integer(static_cast<unsigned long>(lhs_set.size())).get_str();
    out.rhs = Integer(static_cast<unsigned long>(rhs_set.size())).get_str();
    out.exact = true;
    out.verdict = Verdict::holds;
    out.ratio = detail::safe_ratio(static_cast<double>(lhs_set.size()),
                                   static_cast<double>(rhs_set.size()));
    for (const auto& x : lhs_set.elements()) {
        if (!rhs_set.contains(x)) {
            out.verdict = Verdict::fails;
            out.witness = {{"violating_element", x.str()}, {"s", s.str()}};
            break;
        }
    }
    return out;
}

// E3(A) <= C * |A|^3 * log2|A| (convexity advisory).
inline CheckResult check_e3_log_bound(const FiniteSet& a, const Rational& c = Rational(1)) {
    detail::require_size2(a, "check_e3_log_bound");
    Integer e3 = energy_k(a, 3);
    Integer n(static_cast<unsigned long>(a.size()));
    ErrVal lhs = ev::exact(e3);
    ErrVal bare = ev::mul(ev::exact(Integer(n * n * n)), ev::log2(static_cast<double>(a.size())));
    ErrVal rhs = ev::mul(ev::exact(c), bare);
    CheckResult out;
    out.name = "e3_log_bound";
    out.lhs = e3.get_str();
    out.rhs = format_errval(rhs);
    out.constant = c.str();
    out.verdict = detail::interval_leq(lhs, rhs);
    out.ratio = detail::safe_ratio(lhs.value, bare.value);
    out.negative_control = !detail::convex_flag(a);
    return out;
}

// Squared form of E(A,B) <= C |A| |B|^{1.5}: exact comparison
// E(A,B)^2 <= C^2 |A|^2 |B|^3. Convexity of A advisory.
inline CheckResult check_energy_convex_bound(const FiniteSet& a, const FiniteSet& b,
                                  const Rational& c = Rational(1)) {
    Integer e = energy_cross(a, b);
    Integer na(static_cast<unsigned long>(a.size()));
    Integer nb(static_cast<unsigned long>(b.size()));
    Rational lhs(Integer(e * e));
    Rational bare(Integer(na * na * nb * nb * nb));
    CheckResult out = detail::exact_compare("energy_convex_bound", lhs, c * c * bare, true, c.str());
    out.rhs = (c * c * bare).str();
    out.ratio = detail::safe_ratio(lhs.to_double(), bare.to_double());
    out.negative_control = !detail::convex_flag(a);
    return out;
}

// Cubed form of sum_s E(A_s,B) <= E3(A)^{2/3} E3(B)^{1/3}:
// (sum_s E(A_s,B))^3 <= E3(A)^2 E3(B), exact. Equality whenever B = A.
inline CheckResult check_restricted_energy_bound(const FiniteSet& a, const FiniteSet& b) {
    Integer res = restricted_energy_sum(a, b);
    Integer e3a = energy_k(a, 3);
    Integer e3b = energy_k(b, 3);
    Integer lhs = res * res * res;
    Integer rhs = e3a * e3a * e3b;
    CheckResult out;
    out.name = "restricted_energy_bound";
    out.lhs = lhs.get_str();
    out.rhs = rhs.get_str();
    out.exact = true;
    out.verdict = lhs <= rhs ? Verdict::holds : Verdict::fails;
    out.ratio = detail::safe_ratio(lhs.get_d(), rhs.get_d());
    if (lhs == rhs) out.witness = {{"equality", true}};
    return out;
}

// E_{1.5}(A)^2 |B|^2 <= (sum_s E(A_s,B)) * E(A, A+B); interval comparison,
// the only inexact quantity being E_{1.5}(A).
inline CheckResult check_fractional_energy_bound(const FiniteSet& a, const FiniteSet& b) {
    ValueWithBound e15 = energy_fractional(a);
    Integer res = restricted_energy_sum(a, b);
    Integer eaab = detail::energy_via_rep(a, sumset(a, b));
    Integer nb(static_cast<unsigned long>(b.size()));
    ErrVal lhs = ev::mul(ev::square(ev::from_bounded(e15.value, e15.bound)),
                         ev::exact(Integer(nb * nb)));
    Integer rhs_int = res * eaab;
    ErrVal rhs = ev::exact(rhs_int);
    CheckResult out;
    out.name = "fractional_energy_bound";
    out.lhs = format_errval(lhs);
    out.rhs = rhs_int.get_str();
    out.exact = false;
    out.verdict = detail::interval_leq(lhs, rhs);
    out.ratio = detail::safe_ratio(lhs.value, rhs.value);
    out.witness = {{"restricted_sum", res.get_str()}, {"energy_A_AplusB", eaab.get_str()}};
    return out;
}

// Squared per-s Cauchy-Schwarz step: |A_s|^3 |B|^2 <= E(A_s,B) |A_s+B| |A_s|, exact.
inline CheckResult check_cs_step(const FiniteSet& a, const FiniteSet& b, const Rational& s) {
    FiniteSet as = shift_intersect(a, s);
    if (as.empty()) throw EmptyRestriction("check_cs_step: A_s is empty for s = " + s.str());
    Integer nas(static_cast<unsigned long>(as.size()));
    Integer nb(static_cast<unsigned long>(b.size()));
    Integer easb = detail::energy_via_rep(as, b);
    Integer lhs = nas * nas * nas * nb * nb;
    Integer rhs = easb * Integer(static_cast<unsigned long>(sumset(as, b).size())) * nas;
    CheckResult out;
    out.name = "cs_step";
    out.lhs = lhs.get_str();
    out.rhs = rhs.get_str();
    out.exact = true;
    out.verdict = lhs <= rhs ? Verdict::holds : Verdict::fails;
    out.ratio = detail::safe_ratio(lhs.get_d(), rhs.get_d());
    out.witness = {{"s", s.str()}, {"restriction_size", as.size()}};
    return out;
}

// Dyadic-tau tail bound: |{x in A-B : delta_{A,B}(x) >= tau}| <= C M^3 |A||B|^2 / tau^3
// for tau in {1,2,4,...,min(|A|,|B|)}. M = 1 is the plain convex-set form
// (convexity of A advisory); an explicit M covers the f(Z) small-doubling form.
inline CheckResult check_tail_bound(const FiniteSet& a, const FiniteSet& b,
                                    const Rational& c = Rational(16),
                                    const std::optional<Rational>& m_doubling = std::nullopt) {
    RepFunction d = rep_function(a, b, RepKind::difference);
    Rational m = m_doubling.value_or(Rational(1));
    Rational m3 = m.pow(3);
    Integer na(static_cast<unsigned long>(a.size()));
    Integer nb(static_cast<unsigned long>(b.size()));
    Rational scale = m3 * Rational(Integer(na * nb * nb));

    CheckResult out;
    out.name = m_doubling ? "tail_bound_M" : "tail_bound";
    out.exact = true;
    out.constant = c.str();
    out.verdict = Verdict::holds;
    out.negative_control = !m_doubling && !detail::convex_flag(a);

    double max_ratio = -1.0;
    nlohmann::json sweep = nlohmann::json::array();
    std::uint64_t worst_lev = 0;
    Rational worst_bound;
    std::uint64_t limit = std::min(a.size(), b.size());
    for (std::uint64_t tau = 1; tau <= limit; tau *= 2) {
        std::uint64_t lev = level_set(d, Rational(Integer(tau))).size();
        Rational bare = scale / Rational(Integer(tau)).pow(3);
        double ratio = Rational(Integer(lev)).to_double() / bare.to_double();
        if (Rational(Integer(lev)) > c * bare) out.verdict = Verdict::fails;
        if (ratio > max_ratio) {
            max_ratio = ratio;
            worst_lev = lev;
            worst_bound = c * bare;
        }
        sweep.push_back({{"tau", tau}, {"level_size", lev}, {"ratio", ratio}});
    }
    if (max_ratio < 0.0) max_ratio = 0.0;
    out.lhs = Integer(static_cast<unsigned long>(worst_lev)).get_str();
    out.rhs = worst_bound.str();
    out.ratio = max_ratio;
    out.witness = {{"sweep", sweep}, {"M", m.str()}};
    return out;
}

// E2(A)^3 <= C |A|^3 E_{1.5}(A)^2 (interval; convexity advisory), plus the
// convexity-free split inequality sum_{delta<D} delta^2 <= sqrt(D) E_{1.5}(A)
// verified over a dyadic sweep of D and at the balancing point.
inline CheckResult check_e2_e15(const FiniteSet& a, const Rational& c = Rational(1)) {
    Integer e2 = energy_cross(a, a);
    ValueWithBound e15 = energy_fractional(a);
    ErrVal e15v = ev::from_bounded(e15.value, e15.bound);
    Integer n(static_cast<unsigned long>(a.size()));
    ErrVal lhs = ev::exact(Integer(e2 * e2 * e2));
    ErrVal bare = ev::mul(ev::exact(Integer(n * n * n)), ev::square(e15v));
    ErrVal rhs = ev::mul(ev::exact(c), bare);

    CheckResult out;
    out.name = "e2_e15";
    out.lhs = Integer(e2 * e2 * e2).get_str();
    out.rhs = format_errval(rhs);
    out.constant = c.str();
    out.verdict = detail::interval_leq(lhs, rhs);
    out.ratio = detail::safe_ratio(lhs.value, bare.value);
    out.negative_control = !detail::convex_flag(a);

    // split sweep (holds for every D > 0 by pointwise algebra)
    RepFunction d = rep_function(a, a, RepKind::difference);
    std::vector<Rational> deltas;
    for (Rational delta(1); delta <= Rational(Integer(2 * d.max_multiplicity())); delta *= Rational(2))
        deltas.push_back(delta);
    if (e15.value > 0) {
        double balance = e2.get_d() / (2.0 * e15.value);
        if (balance > 0 && std::isfinite(balance))
            deltas.push_back(Rational::from_double(balance * balance));
    }
    nlohmann::json split = nlohmann::json::array();
    for (const auto& delta : deltas) {
        auto bands = dyadic_levels(d, delta);
        ErrVal low_mass = ev::exact(bands[0].mass);
        ErrVal split_rhs = ev::mul(ev::sqrt(ev::exact(delta)), e15v);
        Verdict v = detail::interval_leq(low_mass, split_rhs);
        split.push_back({{"delta", delta.str()},
                         {"low_mass", bands[0].mass.get_str()},
                         {"verdict", verdict_name(v)}});
        out.verdict = detail::worst(out.verdict, v);
    }
    out.witness = {{"split_sweep", split}, {"E15", format_double(e15.value)}};
    return out;
}

// |A+A| >= c |A|^{14/9} / (log2|A|)^{2/9} (convexity advisory, |A| >= 2).
inline CheckResult check_convex_sumset_growth(const FiniteSet& a, const Rational& c = Rational(1)) {
    detail::require_size2(a, "check_convex_sumset_growth");
    Integer plus(static_cast<unsigned long>(sumset(a, a).size()));
    double n = static_cast<double>(a.size());
    ErrVal bare = ev::div(ev::pow_frac(n, 14, 9), ev::pow_frac(std::log2(n), 2, 9));
    ErrVal rhs = ev::mul(ev::exact(c), bare);
    ErrVal lhs = ev::exact(plus);
    CheckResult out;
    out.name = "convex_sumset_growth";
    out.lhs = plus.get_str();
    out.rhs = format_errval(rhs);
    out.constant = c.str();
    out.verdict = detail::interval_geq(lhs, rhs);
    out.ratio = detail::safe_ratio(lhs.value, bare.value);
    out.negative_control = !detail::convex_flag(a);
    return out;
}

// Small multiplicative doubling: computes M = |AA|/|A| exactly and checks
//   |A+A| >= c |A|^{14/9} / (log2|A|)^{2/9}
//   |A-A| >= c |A|^{8/5}  / (log2|A|)^{2/5}
// The implied constants are M-dependent, so the result records M and both
// margins; beyond m_cap the check runs as a labeled control (c = 1 carries no
// meaning for sets that are far from small doubling).
inline CheckResult check_small_doubling_growth(const FiniteSet& a, const Rational& c = Rational(1),
                                    const Rational& m_cap = Rational(4)) {
    detail::require_size2(a, "check_small_doubling_growth");
    if (!a.all_positive()) throw NonpositiveElements("check_small_doubling_growth: elements must be positive");
    Rational m = multiplicative_doubling(a);
    Integer plus(static_cast<unsigned long>(sumset(a, a).size()));
    Integer minus(static_cast<unsigned long>(diffset(a, a).size()));
    double n = static_cast<double>(a.size());
    double logn = std::log2(n);
    ErrVal bare_plus = ev::div(ev::pow_frac(n, 14, 9), ev::pow_frac(logn, 2, 9));
    ErrVal bare_minus = ev::div(ev::pow_frac(n, 8, 5), ev::pow_frac(logn, 2, 5));
    ErrVal cval = ev::exact(c);
    Verdict v_plus = detail::interval_geq(ev::exact(plus), ev::mul(cval, bare_plus));
    Verdict v_minus = detail::interval_geq(ev::exact(minus), ev::mul(cval, bare_minus));
    double margin_plus = detail::safe_ratio(plus.get_d(), bare_plus.value);
    double margin_minus = detail::safe_ratio(minus.get_d(), bare_minus.value);
    CheckResult out;
    out.name = "small_doubling_growth";
    out.lhs = plus.get_str() + "," + minus.get_str();
    out.rhs = format_errval(bare_plus) + "," + format_errval(bare_minus);
    out.constant = c.str();
    out.verdict = detail::worst(v_plus, v_minus);
    out.ratio = std::min(margin_plus, margin_minus);
    out.negative_control = m > m_cap;
    out.witness = {{"M", m.str()},
                   {"sumset", plus.get_str()},
                   {"diffset", minus.get_str()},
                   {"margin_plus", margin_plus},
                   {"margin_minus", margin_minus}};
    return out;
}

// |A±B|^9 >= c |A|^6 |B|^8 / ((log2|A|)^{4/3} (log2|B|)^{8/3}), with its two
// premises: |A|^2|B|^2 <= E(A,B) |A±B| (exact) and
// E(A,B)^3 <= E_{1.5}(A)^2 E3(B) (interval Hölder step).
inline CheckResult check_mixed_pair_bound(const FiniteSet& a, const FiniteSet& b, char sign,
                                      const Rational& c = Rational(1)) {
    detail::require_size2(a, "check_mixed_pair_bound");
    detail::require_size2(b, "check_mixed_pair_bound");
    if (sign != '+' && sign != '-') throw InvalidParameter("check_mixed_pair_bound: sign must be + or -");
    FiniteSet mixed = sign == '+' ? sumset(a, b) : diffset(a, b);
    Integer e = energy_cross(a, b);
    Integer na(static_cast<unsigned long>(a.size()));
    Integer nb(static_cast<unsigned long>(b.size()));
    Integer nm(static_cast<unsigned long>(mixed.size()));

    // premise 1 (Cauchy-Schwarz): |A|^2 |B|^2 <= E(A,B) |A±B|, exact
    Integer p1_lhs = na * na * nb * nb;
    Integer p1_rhs = e * nm;
    Verdict v1 = p1_lhs <= p1_rhs ? Verdict::holds : Verdict::fails;

    // premise 2 (Hölder): E(A,B)^3 <= E_{1.5}(A)^2 E3(B), interval
    ValueWithBound e15 = energy_fractional(a);
    Integer e3b = energy_k(b, 3);
    ErrVal p2_lhs = ev::exact(Integer(e * e * e));
    ErrVal p2_rhs = ev::mul(ev::square(ev::from_bounded(e15.value, e15.bound)), ev::exact(e3b));
    Verdict v2 = detail::interval_leq(p2_lhs, p2_rhs);

    // final inequality
    double loga = std::log2(static_cast<double>(a.size()));
    double logb = std::log2(static_cast<double>(b.size()));
    ErrVal bare = ev::div(ev::mul(ev::powi(ev::exact(Rational(na)), 6), ev::powi(ev::exact(Rational(nb)), 8)),
                          ev::mul(ev::pow_frac(loga, 4, 3), ev::pow_frac(logb, 8, 3)));
    ErrVal lhs = ev::powi(ev::exact(Rational(nm)), 9);
    Verdict v3 = detail::interval_geq(lhs, ev::mul(ev::exact(c), bare));

    CheckResult out;
    out.name = sign == '+' ? "mixed_pair_bound_plus" : "mixed_pair_bound_minus";
    out.lhs = format_errval(lhs);
    out.rhs = format_errval(bare);
    out.constant = c.str();
    out.verdict = detail::worst(detail::worst(v1, v2), v3);
    out.ratio = detail::safe_ratio(lhs.value, bare.value);
    out.negative_control = !detail::convex_flag(a) || !detail::convex_flag(b);
    out.witness = {{"premise_cs", verdict_name(v1)},
                   {"premise_holder", verdict_name(v2)},
                   {"final", verdict_name(v3)},
                   {"premise_cs_lhs", p1_lhs.get_str()},
                   {"premise_cs_rhs", p1_rhs.get_str()}};
    return out;
}

// |A-A|^2 |A±B|^3 >= c |A|^6 |B|^2 / ((log2|A|)^{4/3} (log2|B|)^{2/3}), with
// the Hölder premise |A|^6 <= E_{1.5}(A)^2 |A-A| (interval).
inline CheckResult check_diff_pair_bound(const FiniteSet& a, const FiniteSet& b, char sign,
                                     const Rational& c = Rational(1)) {
    if (sign != '+' && sign != '-') throw InvalidParameter("check_diff_pair_bound: sign must be + or -");
    ValueWithBound e15 = energy_fractional(a);
    Integer na(static_cast<unsigned long>(a.size()));
    Integer nminus(static_cast<unsigned long>(diffset(a, a).size()));
    ErrVal p_lhs = ev::exact(Integer(na * na * na * na * na * na));
    ErrVal p_rhs = ev::mul(ev::square(ev::from_bounded(e15.value, e15.bound)), ev::exact(nminus));
    Verdict v1 = detail::interval_leq(p_lhs, p_rhs);

    CheckResult out;
    out.name = sign == '+' ? "diff_pair_bound_plus" : "diff_pair_bound_minus";
    out.constant = c.str();
    out.negative_control = !detail::convex_flag(a) || !detail::convex_flag(b);

    if (a.size() < 2 || b.size() < 2) {
        // log factors vanish; only the premise is meaningful
        out.lhs = format_errval(p_lhs);
        out.rhs = format_errval(p_rhs);
        out.verdict = v1;
        out.ratio = detail::safe_ratio(p_lhs.value, p_rhs.value);
        out.witness = {{"premise_only", true}, {"premise_holder", verdict_name(v1)}};
        return out;
    }

    FiniteSet mixed = sign == '+' ? sumset(a, b) : diffset(a, b);
    Integer nb(static_cast<unsigned long>(b.size()));
    Integer nm(static_cast<unsigned long>(mixed.size()));
    double loga = std::log2(static_cast<double>(a.size()));
    double logb = std::log2(static_cast<double>(b.size()));
    ErrVal lhs = ev::mul(ev::powi(ev::exact(Rational(nminus)), 2), ev::powi(ev::exact(Rational(nm)), 3));
    ErrVal bare = ev::div(ev::mul(ev::powi(ev::exact(Rational(na)), 6), ev::powi(ev::exact(Rational(nb)), 2)),
                          ev::mul(ev::pow_frac(loga, 4, 3), ev::pow_frac(logb, 2, 3)));
    Verdict v2 = detail::interval_geq(lhs, ev::mul(ev::exact(c), bare));
    out.lhs = format_errval(lhs);
    out.rhs = format_errval(bare);
    out.verdict = detail::worst(v1, v2);
    out.ratio = detail::safe_ratio(lhs.value, bare.value);
    out.witness = {{"premise_holder", verdict_name(v1)}, {"final", verdict_name(v2)}};
    return out;
}

} // namespace convexsum
