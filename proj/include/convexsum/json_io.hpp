#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "convexsum/check.hpp"
#include "convexsum/energy.hpp"
#include "convexsum/errors.hpp"
#include "convexsum/finite_set.hpp"
#include "convexsum/generators.hpp"
#include "convexsum/rep_function.hpp"
#include "convexsum/search.hpp"

namespace convexsum {

using nlohmann::json;

// ---- element encoding: shorthand integer or ["num","den"] string pair ----

inline json element_to_json(const Rational& r, bool shorthand_ok) {
    if (shorthand_ok && r.is_integer()) {
        auto v = r.to_int64();
        if (v && *v <= (INT64_C(1) << 53) && *v >= -(INT64_C(1) << 53)) return json(*v);
    }
    return json::array({r.num().get_str(), r.den().get_str()});
}

inline Rational element_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<std::int64_t>()));
    if (j.is_number_float()) return Rational::from_double(j.get<double>()); // exact dyadic
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string()) {
        Integer num(j[0].get<std::string>());
        Integer den(j[1].get<std::string>());
        return Rational(num, den);
    }
    throw ParseError("bad element encoding: " + j.dump());
}

// Canonical on write: sorted (the set already is), reduced, shorthand only
// when every element is a small integer.
inline json set_to_json(const FiniteSet& a) {
    bool shorthand = true;
    for (const auto& r : a.elements()) {
        auto v = r.to_int64();
        if (!v || *v > (INT64_C(1) << 53) || *v < -(INT64_C(1) << 53)) {
            shorthand = false;
            break;
        }
    }
    json elems = json::array();
    for (const auto& r : a.elements()) elems.push_back(element_to_json(r, shorthand));
    return {{"elements", elems}};
}

inline FiniteSet set_from_json(const json& j, bool strict = false) {
    if (!j.contains("elements") || !j["elements"].is_array())
        throw ParseError("set JSON needs an 'elements' array");
    std::vector<Rational> vals;
    for (const auto& e : j["elements"]) vals.push_back(element_from_json(e));
    return FiniteSet::from_values(std::move(vals), strict);
}

// ---- representation function dump ----

inline json rep_to_json(const RepFunction& rep) {
    json entries = json::array();
    for (const auto& [value, count] : rep.entries)
        entries.push_back(json::array({element_to_json(value, true), json(count)}));
    return {{"kind", rep.kind == RepKind::difference ? "difference" : "sum"},
            {"entries", entries},
            {"sourceSizes", json::array({rep.size_a, rep.size_b})}};
}

// ---- energy report ----

inline json energy_report_to_json(const EnergyReport& rep) {
    return {{"n", rep.n},
            {"diffSupport", rep.diff_support},
            {"E2", rep.e2.get_str()},
            {"E3", rep.e3.get_str()},
            {"E15", {{"value", rep.e15.value}, {"bound", rep.e15.bound}}},
            {"ratios",
             {{"e2CauchySchwarzSlack", rep.e2_cs_slack},
              {"e2OverN3", rep.e2_over_n3},
              {"e3OverN3Log", rep.e3_over_n3log}}}};
}

// ---- corpus manifest ----

inline json corpus_manifest(const std::vector<CorpusMember>& corpus) {
    json members = json::array();
    for (const auto& m : corpus)
        members.push_back({{"index", m.index},
                           {"family", family_name(m.spec.family)},
                           {"label", m.label},
                           {"n", m.set.size()},
                           {"seed", m.spec.seed},
                           {"convex", m.convex_expected}});
    return {{"members", members}};
}

// ---- search state ----

inline json search_state_to_json(const SearchState& st) {
    json gaps = json::array();
    for (auto g : st.gaps) gaps.push_back(g);
    json best = json::array();
    for (auto g : st.best_gaps) best.push_back(g);
    json trace = json::array();
    for (const auto& m : st.trace)
        trace.push_back({{"iteration", m.iteration},
                         {"gapIndex", m.gap_index},
                         {"delta", m.delta},
                         {"objective", m.objective}});
    return {{"n", st.n},
            {"objective", objective_name(st.objective_kind)},
            {"gaps", gaps},
            {"objectiveValue", st.objective},
            {"bestGaps", best},
            {"bestObjective", st.best_objective},
            {"t0", st.t0},
            {"iterations", st.iterations},
            {"accepted", st.accepted},
            {"bestSet", set_to_json(st.best_set())},
            {"trace", trace}};
}

// ---- file helpers ----

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

} // namespace convexsum
