#include "zetacf/engine.hpp"

#include <cmath>

#include "zetacf/catalog.hpp"
#include "zetacf/error.hpp"

namespace zetacf {

namespace {

Integer as_integer(const Rational& r) {
    if (!r.is_integer()) {
        throw Error("continued fraction term is not an integer: " + r.str());
    }
    return r.num();
}

Rational scale_for(TargetConstant target) { return target == TargetConstant::TwoZeta3 ? Rational(2) : Rational(1); }

// Both ends of a certified enclosure truncate to the same decimal.
bool same_truncation(const Rational& lo, const Rational& hi, std::size_t digits) {
    return rat_truncate(lo, digits) == rat_truncate(hi, digits);
}

ReferenceValue make_reference(const Rational& v, std::size_t digits, OracleId id, TargetConstant target) {
    ReferenceValue r;
    r.digits = digits;
    r.value = rat_truncate(v, digits);
    r.decimal = rat_to_decimal(v, digits).text;
    r.oracle = id;
    r.target = target;
    return r;
}

}  // namespace

std::vector<Convergent> convergents(const TermList& terms) {
    std::vector<Convergent> out;
    out.reserve(terms.terms.size() + 1);
    Integer p_prev = 1;
    Integer q_prev = 0;
    Integer p = as_integer(terms.b0);
    Integer q = 1;
    out.push_back({0, p, q});
    for (std::size_t i = 0; i < terms.terms.size(); ++i) {
        const Integer a = as_integer(terms.terms[i].a);
        const Integer b = as_integer(terms.terms[i].b);
        Integer p_next = b * p + a * p_prev;
        Integer q_next = b * q + a * q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(p_next);
        q = std::move(q_next);
        if (q == 0) {
            throw DegenerateConvergent(i + 1);
        }
        out.push_back({i + 1, p, q});
    }
    return out;
}

std::vector<Convergent> convergents(const FlatCF& f, std::size_t nMax) { return convergents(f.prefix(nMax)); }

Rational eval_backward(const Stage& s, std::size_t depth, const Rational& seed) {
    if (!s.head) {
        throw Error("stage " + s.name + " has no head to evaluate");
    }
    const PolyMobius step = step_matrix(s);
    Rational x = seed;
    for (std::size_t i = depth; i-- > 0;) {
        x = mobius_apply(step, x, static_cast<long>(i));
    }
    return mobius_apply(s.head->map, x, 0);
}

std::string to_string(OracleId id) { return id == OracleId::Series ? "SERIES" : "DEEP_CF"; }

ReferenceValue zeta3_series(std::size_t digits, TargetConstant target) {
    const Rational scale = Rational(Integer(5), Integer(2)) * scale_for(target);
    const Rational stop(Integer(1), ipow(10, digits + 5));

    mpq_class sum = 0;
    Integer central = 1;  // binom(2n, n)
    for (unsigned long n = 1;; ++n) {
        central = central * (2 * n) * (2 * n - 1) / (n * n);
        const Integer denom = Integer(n) * n * n * central;
        const mpq_class term(n % 2 == 1 ? 1 : -1, denom);
        sum += term;

        const mpq_class next_mag(1, Integer(n + 1) * (n + 1) * (n + 1) * (central * (2 * n + 2) * (2 * n + 1) /
                                                                       ((n + 1) * (n + 1))));
        if (Rational(next_mag.get_num(), next_mag.get_den()) >= stop) {
            continue;
        }
        // The limit lies strictly between S_n and S_n +/- next term.
        const Rational s(sum.get_num(), sum.get_den());
        const Rational next(next_mag.get_num(), next_mag.get_den());
        const Rational other = n % 2 == 1 ? s - next : s + next;
        const Rational lo = scale * (n % 2 == 1 ? other : s);
        const Rational hi = scale * (n % 2 == 1 ? s : other);
        if (same_truncation(lo, hi, digits)) {
            return make_reference(lo, digits, OracleId::Series, target);
        }
    }
}

ReferenceValue zeta3_deep_cf(std::size_t digits, TargetConstant target) {
    // The Apéry fraction converges to 2*zeta(3).
    const FlatCF apery = flatten(find_stage(catalog(), "APERY"));
    const Rational scale = target == TargetConstant::TwoZeta3 ? Rational(1) : Rational(Integer(1), Integer(2));
    const Rational stop(Integer(1), ipow(10, digits + 5));

    Integer p_prev = 1, q_prev = 0;
    Integer p = as_integer(apery.b0), q = 1;
    Rational x_prev;
    for (std::size_t n = 1;; ++n) {
        const Integer a = as_integer(apery.a(n));
        const Integer b = as_integer(apery.b(n));
        Integer p_next = b * p + a * p_prev;
        Integer q_next = b * q + a * q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(p_next);
        q = std::move(q_next);
        const Rational x(p, q);
        if (n >= 2) {
            const Rational gap = (x - x_prev).abs();
            if (gap < stop) {
                // Errors shrink by ~10^3 per term, so the tail is well inside
                // twice the last gap.
                const Rational lo = scale * (x - gap * Rational(2));
                const Rational hi = scale * (x + gap * Rational(2));
                if (same_truncation(lo, hi, digits)) {
                    return make_reference(scale * x, digits, OracleId::DeepCf, target);
                }
            }
        }
        x_prev = x;
    }
}

ReferenceValue zeta3_reference(std::size_t digits, TargetConstant target) {
    ReferenceValue series = zeta3_series(digits, target);
    const ReferenceValue deep = zeta3_deep_cf(digits, target);
    if (series.decimal != deep.decimal) {
        throw OracleDisagreement(series.decimal + " vs " + deep.decimal);
    }
    return series;
}

namespace {

// Returns the curve, or an empty optional when the guard trips.
std::optional<ErrorCurve> measure(const std::vector<Convergent>& conv, const ReferenceValue& ref) {
    constexpr double kGuardDigits = 10.0;
    ErrorCurve curve;
    curve.referenceDigits = ref.digits;
    for (const auto& c : conv) {
        const Rational diff = (c.value() - ref.value).abs();
        if (diff.is_zero()) {
            continue;
        }
        const double d = -log10_abs(diff);
        if (d > static_cast<double>(ref.digits) - kGuardDigits) {
            return std::nullopt;
        }
        curve.points.push_back({c.n, d});
    }
    return curve;
}

}  // namespace

ErrorCurve error_curve(const FlatCF& f, std::size_t nMax, const ReferenceValue& ref) {
    const auto conv = convergents(f, nMax);
    if (ref.target != f.target) {
        throw Error("reference target " + to_string(ref.target) + " does not match " + to_string(f.target));
    }
    if (auto curve = measure(conv, ref)) {
        return *curve;
    }
    // One extension attempt, sized from the best convergent.
    const Rational best = (conv.back().value() - ref.value).abs();
    const double needed = best.is_zero() ? 2.0 * static_cast<double>(ref.digits) : -log10_abs(best);
    const auto digits = static_cast<std::size_t>(std::max(2.0 * static_cast<double>(ref.digits), needed + 30.0));
    const ReferenceValue extended = zeta3_reference(digits, ref.target);
    if (auto curve = measure(conv, extended)) {
        return *curve;
    }
    throw InsufficientReferencePrecision("reference of " + std::to_string(digits) + " digits");
}

double digits_per_term(const ErrorCurve& c, std::size_t lo, std::size_t hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (const auto& p : c.points) {
        if (p.n < lo || p.n > hi) {
            continue;
        }
        const auto x = static_cast<double>(p.n);
        sx += x;
        sy += p.digits;
        sxx += x * x;
        sxy += x * p.digits;
        ++count;
    }
    if (count < 2) {
        throw InsufficientData(std::to_string(count) + " point(s) in window " + std::to_string(lo) + ":" +
                               std::to_string(hi));
    }
    const auto m = static_cast<double>(count);
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace zetacf
