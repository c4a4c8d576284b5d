#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "zetacf/rational.hpp"

namespace zetacf {

/// Univariate polynomial over Q in the index variable k.
///
/// coeffs()[i] is the coefficient of k^i. The zero polynomial is the empty
/// coefficient sequence and has degree -1; any other polynomial has a nonzero
/// leading coefficient.
class Poly {
public:
    Poly() = default;
    Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    Poly(const Rational& c);             // NOLINT(google-explicit-constructor)
    Poly(std::initializer_list<long> coeffs);
    explicit Poly(std::vector<Rational> coeffs);

    /// The polynomial k.
    static Poly k();

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    Rational leading() const { return is_zero() ? Rational() : coeffs_.back(); }
    /// Coefficient of k^i (zero beyond the degree).
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(); }

    Rational eval(const Rational& k) const;
    Rational eval(long k) const { return eval(Rational(k)); }

    /// p(k + c).
    Poly shifted(long c) const;
    Poly pow(unsigned exponent) const;
    Poly monic() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    Poly& operator*=(const Poly& rhs);

    friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
    friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
    friend Poly operator*(Poly lhs, const Poly& rhs) { return lhs *= rhs; }
    friend bool operator==(const Poly& lhs, const Poly& rhs) = default;

    /// Human-readable form, e.g. "34k^3 + 51k^2 + 27k + 5".
    std::string str() const;
    /// Space-separated ascending coefficient list, "0" for the zero polynomial.
    std::string coeff_list() const;

private:
    void trim();

    std::vector<Rational> coeffs_;
};

enum class PolyOp { Add, Sub, Mul };

Poly poly_arith(const Poly& p, const Poly& q, PolyOp op);
Rational poly_eval(const Poly& p, long k);

/// Quotient and remainder of Euclidean division over Q. Throws ZeroDivisor.
std::pair<Poly, Poly> poly_divmod(const Poly& p, const Poly& q);

/// r with r*q == p; throws NotDivisible on a nonzero remainder, ZeroDivisor
/// when q is zero.
Poly poly_divexact(const Poly& p, const Poly& q);

/// Monic greatest common divisor; gcd(0, 0) = 0.
Poly poly_gcd(const Poly& p, const Poly& q);

/// Non-negative integer roots of p (p must be nonzero).
std::vector<long> nonnegative_integer_roots(const Poly& p);

}  // namespace zetacf
