#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "zetacf/stage.hpp"

namespace zetacf {

/// n-th convergent from the three-term recurrence. p and q are kept
/// unreduced; value() reduces on demand.
struct Convergent {
    std::size_t n = 0;
    Integer p;
    Integer q;

    Rational value() const { return Rational(p, q); }
};

/// Convergents x_0 .. x_nMax of b0 + a_1/(b_1 + ...), seeded with
/// p_{-1} = 1, q_{-1} = 0, p_0 = b_0, q_0 = 1. Throws DegenerateConvergent
/// on q_n = 0. Terms must be integers.
std::vector<Convergent> convergents(const TermList& terms);
std::vector<Convergent> convergents(const FlatCF& f, std::size_t nMax);

/// Backward evaluation: X_depth = seed, X_k = step_k(X_{k+1}) down to k = 0,
/// then the head. Requires a head; PoleError carries the offending k.
Rational eval_backward(const Stage& s, std::size_t depth, const Rational& seed);

enum class OracleId { Series, DeepCf };

std::string to_string(OracleId id);

struct ReferenceValue {
    std::size_t digits = 0;
    std::string decimal;   // truncated toward zero
    Rational value;        // the same truncation as an exact rational
    OracleId oracle = OracleId::Series;
    TargetConstant target = TargetConstant::Zeta3;
};

/// zeta(3) = (5/2) sum_{n>=1} (-1)^{n-1} / (n^3 binom(2n, n)), summed exactly
/// until the alternating bracket pins down every requested digit.
ReferenceValue zeta3_series(std::size_t digits, TargetConstant target = TargetConstant::Zeta3);

/// Deep convergent of the Apéry continued fraction, extended until
/// consecutive convergents certify every requested digit.
ReferenceValue zeta3_deep_cf(std::size_t digits, TargetConstant target = TargetConstant::Zeta3);

/// Both oracles; throws OracleDisagreement if they differ in any digit.
/// Returns the SERIES value.
ReferenceValue zeta3_reference(std::size_t digits, TargetConstant target = TargetConstant::Zeta3);

struct ErrorPoint {
    std::size_t n = 0;
    double digits = 0.0;  // -log10 |x_n - L|
};

struct ErrorCurve {
    std::vector<ErrorPoint> points;
    std::size_t referenceDigits = 0;
};

/// Digits of accuracy of each convergent against the reference. Points with
/// x_n == L are omitted. The reference is extended once if the smallest
/// error gets within 10 guard digits of its precision; a second failure
/// throws InsufficientReferencePrecision.
ErrorCurve error_curve(const FlatCF& f, std::size_t nMax, const ReferenceValue& ref);

/// Least-squares slope of digits vs n over lo <= n <= hi. Throws
/// InsufficientData with fewer than two points.
double digits_per_term(const ErrorCurve& c, std::size_t lo, std::size_t hi);

}  // namespace zetacf
