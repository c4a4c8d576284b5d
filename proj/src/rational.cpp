#include "zetacf/rational.hpp"

#include <cmath>
#include <cstdio>

#include "zetacf/error.hpp"

namespace zetacf {

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) {
        throw ZeroDenominator();
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::abs() const {
    Rational r;
    r.value_ = ::abs(value_);
    return r;
}

Rational Rational::operator-() const {
    Rational r;
    r.value_ = -value_;
    return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) {
        throw ZeroDenominator();
    }
    value_ /= rhs.value_;
    return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (is_integer()) {
        return value_.get_num().get_str();
    }
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational rat_make(const Integer& num, const Integer& den) { return Rational(num, den); }

Integer ipow(const Integer& base, unsigned long exponent) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

Decimal rat_to_decimal(const Rational& r, std::size_t digits) {
    const Integer num = ::abs(r.num());
    const Integer den = r.den();
    const Integer whole = num / den;
    const Integer scaled = (num % den) * ipow(10, digits);
    const Integer frac = scaled / den;
    const bool exact = (scaled % den) == 0;

    std::string frac_text = frac.get_str();
    if (frac_text.size() < digits) {
        frac_text.insert(0, digits - frac_text.size(), '0');
    }
    std::string text;
    // -0.000 is printed as 0.000: truncation toward zero can erase the sign.
    if (r.sign() < 0 && (whole != 0 || frac != 0)) {
        text = "-";
    }
    text += whole.get_str();
    if (digits > 0) {
        text += "." + frac_text;
    }
    return {text, exact};
}

Rational rat_truncate(const Rational& r, std::size_t digits) {
    const Integer scale = ipow(10, digits);
    Integer scaled = r.num() * scale;
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), r.den().get_mpz_t());
    return Rational(q, scale);
}

namespace {

double log10_abs_integer(const Integer& v) {
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * std::log10(2.0);
}

}  // namespace

double log10_abs(const Rational& r) {
    if (r.is_zero()) {
        throw Error("log10 of zero");
    }
    return log10_abs_integer(r.num()) - log10_abs_integer(r.den());
}

std::string scientific(const Rational& r, int significant) {
    if (r.is_zero()) {
        return "0";
    }
    const double lg = log10_abs(r);
    double exponent = std::floor(lg);
    double mantissa = std::pow(10.0, lg - exponent);
    // Truncate the mantissa rather than round, consistent with decimal output.
    const double scale = std::pow(10.0, significant - 1);
    mantissa = std::floor(mantissa * scale + 1e-9) / scale;
    if (mantissa >= 10.0) {
        mantissa /= 10.0;
        exponent += 1.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*fe%d", significant - 1, mantissa, static_cast<int>(exponent));
    return buf;
}

}  // namespace zetacf
