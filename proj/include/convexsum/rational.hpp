#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "convexsum/errors.hpp"

namespace convexsum {

using Integer = mpz_class;

inline Integer integer_pow(const Integer& base, unsigned long exp) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

inline std::string integer_to_string(const Integer& v) { return v.get_str(); }

// Exact rational scalar. Always kept in canonical form: gcd(|num|, den) = 1,
// den >= 1. Equality is structural equality of the canonical form.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(int v) : q_(v) {}                  // NOLINT: implicit by design
    Rational(long v) : q_(v) {}
    Rational(long long v) {
        if constexpr (sizeof(long long) == sizeof(long))
            q_ = mpq_class(static_cast<long>(v));
        else
            q_ = mpq_class(Integer(std::to_string(v)));
    }
    Rational(const Integer& v) : q_(v) {}
    Rational(const Integer& num, const Integer& den) : q_(num, den) {
        if (den == 0) throw InvalidParameter("rational with zero denominator");
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Parses "p", "p/q" or a decimal string like "-1.25" (exact).
    static Rational parse(std::string_view text) {
        std::string s(text);
        if (s.empty()) throw ParseError("empty rational literal");
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            std::size_t frac_len = s.size() - dot - 1;
            if (frac_len == 0) throw ParseError("trailing '.' in rational literal: " + s);
            Integer num, den;
            if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
                throw ParseError("bad rational literal: " + s);
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
            return Rational(num, den);
        }
        mpq_class q;
        if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
            throw ParseError("bad rational literal: " + s);
        if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
        return Rational(q);
    }

    // binary64 values are dyadic rationals; the conversion is exact.
    static Rational from_double(double v) {
        if (!std::isfinite(v)) throw InvalidParameter("non-finite double cannot become a rational");
        return Rational(mpq_class(v));
    }

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    double to_double() const { return q_.get_d(); }

    std::optional<std::int64_t> to_int64() const {
        if (!is_integer()) return std::nullopt;
        const mpz_class& n = q_.get_num();
        if (!n.fits_slong_p()) return std::nullopt;
        return static_cast<std::int64_t>(n.get_si());
    }

    std::string str() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    friend Rational operator+(const Rational& a, const Rational& b) { return wrap(a.q_ + b.q_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return wrap(a.q_ - b.q_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return wrap(a.q_ * b.q_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.q_ == 0) throw InvalidParameter("division by zero rational");
        return wrap(a.q_ / b.q_);
    }
    Rational operator-() const { return wrap(-q_); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    friend Rational abs(const Rational& a) { return wrap(abs(a.q_)); }

    Rational pow(unsigned long e) const {
        Integer n, d;
        mpz_pow_ui(n.get_mpz_t(), q_.get_num().get_mpz_t(), e);
        mpz_pow_ui(d.get_mpz_t(), q_.get_den().get_mpz_t(), e);
        mpq_class out(n, d); // already canonical when the base is
        return wrap(out);
    }

    const mpq_class& raw() const { return q_; }

private:
    static Rational wrap(mpq_class q) {
        Rational r;
        r.q_ = std::move(q); // gmp arithmetic results are canonical
        return r;
    }
    mpq_class q_;
};

inline Rational operator*(const Integer& a, const Rational& b) { return Rational(a) * b; }

} // namespace convexsum
