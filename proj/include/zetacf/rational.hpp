#pragma once

#include <compare>
#include <cstddef>
#include <string>

#include <gmpxx.h>

namespace zetacf {

using Integer = mpz_class;

/// Exact rational number in canonical form: positive denominator, numerator
/// and denominator coprime, zero stored as 0/1.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    /// Throws ZeroDenominator when `den` is zero.
    Rational(const Integer& num, const Integer& den);

    Integer num() const { return value_.get_num(); }
    Integer den() const { return value_.get_den(); }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return value_.get_den() == 1; }

    Rational abs() const;
    Rational operator-() const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

    /// "p" for integers, "p/q" otherwise.
    std::string str() const;

    const mpq_class& gmp() const { return value_; }

private:
    mpq_class value_;
};

Rational rat_make(const Integer& num, const Integer& den);

/// Integer power with non-negative exponent.
Integer ipow(const Integer& base, unsigned long exponent);

struct Decimal {
    std::string text;
    bool exact = false;  // expansion terminates within the requested digits
};

/// Decimal expansion truncated toward zero to `digits` fractional digits.
Decimal rat_to_decimal(const Rational& r, std::size_t digits);

/// Truncation toward zero to `digits` fractional digits, as a Rational.
Rational rat_truncate(const Rational& r, std::size_t digits);

/// log10(|r|) for r != 0, computed from the big-integer mantissas in double
/// precision.
double log10_abs(const Rational& r);

/// Compact scientific rendering ("4.12e-3") of |r| for reports; 0 renders "0".
std::string scientific(const Rational& r, int significant = 3);

}  // namespace zetacf
