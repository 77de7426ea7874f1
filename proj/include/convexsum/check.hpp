#pragma once

#include <charconv>
#include <cmath>
#include <string>

#include <json.hpp>

#include "convexsum/errval.hpp"
#include "convexsum/rational.hpp"

namespace convexsum {

enum class Verdict { holds, fails, marginal };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        default: return "marginal";
    }
}

// Shortest round-trip decimal form; locale-free and deterministic.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string format_errval(const ErrVal& v) {
    return format_double(v.value) + "±" + format_double(v.err);
}

// One verified identity or inequality.
struct CheckResult {
    std::string name;
    std::string lhs;         // decimal string (exact) or "value±bound"
    std::string rhs;
    double ratio = std::numeric_limits<double>::quiet_NaN(); // lhs/rhs, constants excluded
    Verdict verdict = Verdict::fails;
    bool exact = false;
    bool negative_control = false; // advisory precondition (convexity) unmet
    std::string constant;          // configured constant, empty if none
    nlohmann::json witness;        // optional structured details

    bool passed() const { return verdict != Verdict::fails; }
};

inline nlohmann::json check_to_json(const CheckResult& c) {
    nlohmann::json j{{"name", c.name},   {"lhs", c.lhs},
                     {"rhs", c.rhs},     {"ratio", c.ratio},
                     {"verdict", verdict_name(c.verdict)}, {"exact", c.exact}};
    if (!c.constant.empty()) j["constant"] = c.constant;
    if (c.negative_control) j["negativeControl"] = true;
    if (!c.witness.is_null()) j["witness"] = c.witness;
    return j;
}

namespace detail {

// Interval verdict for lhs <= rhs: holds iff the whole lhs interval sits at
// or below the whole rhs interval; fails iff they are strictly separated the
// other way; marginal when the intervals straddle the boundary.
inline Verdict interval_leq(const ErrVal& lhs, const ErrVal& rhs) {
    if (lhs.upper() <= rhs.lower()) return Verdict::holds;
    if (lhs.lower() > rhs.upper()) return Verdict::fails;
    return Verdict::marginal;
}

inline Verdict interval_geq(const ErrVal& lhs, const ErrVal& rhs) {
    if (lhs.lower() >= rhs.upper()) return Verdict::holds;
    if (lhs.upper() < rhs.lower()) return Verdict::fails;
    return Verdict::marginal;
}

inline double safe_ratio(double num, double den) {
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
}

inline Verdict worst(Verdict a, Verdict b) {
    if (a == Verdict::fails || b == Verdict::fails) return Verdict::fails;
    if (a == Verdict::marginal || b == Verdict::marginal) return Verdict::marginal;
    return Verdict::holds;
}

} // namespace detail

} // namespace convexsum
