#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "convexsum/rational.hpp"

namespace convexsum {

// A binary64 value carrying a rigorous absolute error bound:
// the true quantity lies in [value - err, value + err].
struct ErrVal {
    double value = 0.0;
    double err = 0.0;

    double lower() const { return value - err; }
    double upper() const { return value + err; }
};

namespace ev {

inline constexpr double kUlp = 2.220446049250313e-16; // 2^-52

inline double rounding_slack(double v) {
    return std::fabs(v) * kUlp + std::numeric_limits<double>::denorm_min();
}

inline ErrVal exact(const Integer& v) {
    double d = v.get_d(); // truncated, off by at most one ulp
    double e = 0.0;
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 53) e = rounding_slack(d);
    return {d, e};
}

inline ErrVal exact(const Rational& q) {
    if (q.is_integer()) return exact(q.num());
    return {q.to_double(), rounding_slack(q.to_double())};
}

inline ErrVal from_bounded(double value, double err) { return {value, err}; }

inline ErrVal add(ErrVal a, ErrVal b) {
    double v = a.value + b.value;
    return {v, a.err + b.err + rounding_slack(v)};
}

inline ErrVal sub(ErrVal a, ErrVal b) {
    double v = a.value - b.value;
    return {v, a.err + b.err + rounding_slack(v)};
}

inline ErrVal mul(ErrVal a, ErrVal b) {
    double v = a.value * b.value;
    double e = std::fabs(a.value) * b.err + std::fabs(b.value) * a.err + a.err * b.err +
               rounding_slack(v);
    return {v, e};
}

inline ErrVal square(ErrVal a) { return mul(a, a); }

inline ErrVal powi(ErrVal a, unsigned k) {
    ErrVal out{1.0, 0.0};
    for (unsigned i = 0; i < k; ++i) out = mul(out, a);
    return out;
}

inline ErrVal div(ErrVal a, ErrVal b) {
    double denom_low = std::fabs(b.value) - b.err;
    double v = a.value / b.value;
    if (!(denom_low > 0.0)) return {v, std::numeric_limits<double>::infinity()};
    double e = (a.err + std::fabs(v) * b.err) / denom_low + rounding_slack(v);
    return {v, e};
}

// sqrt of a nonnegative quantity; derivative bound on [value-err, value+err].
inline ErrVal sqrt(ErrVal a) {
    double v = std::sqrt(std::max(a.value, 0.0));
    double low = a.value - a.err;
    double e;
    if (low > 0.0)
        e = a.err / (2.0 * std::sqrt(low)) + rounding_slack(v);
    else
        e = std::sqrt(a.err) + rounding_slack(v); // |sqrt(x)-sqrt(y)| <= sqrt(|x-y|)
    return {v, e};
}

// base^{num/den} for an exactly-representable positive base. Covers the libm
// pow error and the rounding of the exponent num/den itself.
inline ErrVal pow_frac(double base, int num, int den) {
    double p = static_cast<double>(num) / static_cast<double>(den);
    double v = std::pow(base, p);
    double rel = kUlp * (4.0 + 2.0 * std::fabs(p * std::log(base)));
    return {v, std::fabs(v) * rel + std::numeric_limits<double>::denorm_min()};
}

// log2 of an exactly-representable value > 0.
inline ErrVal log2(double x) {
    double v = std::log2(x);
    return {v, std::fabs(v) * 2.0 * kUlp + std::numeric_limits<double>::denorm_min()};
}

} // namespace ev

} // namespace convexsum
