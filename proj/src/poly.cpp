#include "zetacf/poly.hpp"

#include <algorithm>
#include <cmath>

#include "zetacf/error.hpp"

namespace zetacf {

Poly::Poly(const Rational& c) {
    if (!c.is_zero()) {
        coeffs_.push_back(c);
    }
}

Poly::Poly(std::initializer_list<long> coeffs) {
    for (long c : coeffs) {
        coeffs_.emplace_back(c);
    }
    trim();
}

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::k() { return Poly{0, 1}; }

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) {
        coeffs_.pop_back();
    }
}

Rational Poly::eval(const Rational& k) const {
    Rational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * k + *it;
    }
    return acc;
}

Poly Poly::shifted(long c) const {
    // Horner in the polynomial ring: p(k + c) = (...(a_n (k+c) + a_{n-1})(k+c) ...).
    const Poly step{c, 1};
    Poly acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * step + Poly(*it);
    }
    return acc;
}

Poly Poly::pow(unsigned exponent) const {
    Poly out(1);
    for (unsigned i = 0; i < exponent; ++i) {
        out *= *this;
    }
    return out;
}

Poly Poly::monic() const {
    if (is_zero()) {
        return *this;
    }
    const Rational lead = leading();
    std::vector<Rational> c = coeffs_;
    for (auto& x : c) {
        x /= lead;
    }
    return Poly(std::move(c));
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& c : out.coeffs_) {
        c = -c;
    }
    return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size());
    }
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
        coeffs_[i] += rhs.coeffs_[i];
    }
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) { return *this += -rhs; }

Poly& Poly::operator*=(const Poly& rhs) {
    if (is_zero() || rhs.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            out[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    coeffs_ = std::move(out);
    trim();
    return *this;
}

std::string Poly::str() const {
    if (is_zero()) {
        return "0";
    }
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = coeffs_[static_cast<std::size_t>(i)];
        if (c.is_zero()) {
            continue;
        }
        const bool negative = c.sign() < 0;
        if (out.empty()) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        const Rational mag = c.abs();
        const bool unit = mag == Rational(1);
        if (i == 0 || !unit) {
            out += mag.is_integer() || i == 0 ? mag.str() : "(" + mag.str() + ")";
        }
        if (i >= 1) {
            out += "k";
        }
        if (i >= 2) {
            out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::string Poly::coeff_list() const {
    if (is_zero()) {
        return "0";
    }
    std::string out;
    for (const auto& c : coeffs_) {
        if (!out.empty()) {
            out += ' ';
        }
        out += c.str();
    }
    return out;
}

Poly poly_arith(const Poly& p, const Poly& q, PolyOp op) {
    switch (op) {
        case PolyOp::Add:
            return p + q;
        case PolyOp::Sub:
            return p - q;
        case PolyOp::Mul:
            return p * q;
    }
    return {};
}

Rational poly_eval(const Poly& p, long k) { return p.eval(k); }

std::pair<Poly, Poly> poly_divmod(const Poly& p, const Poly& q) {
    if (q.is_zero()) {
        throw ZeroDivisor();
    }
    std::vector<Rational> rem = p.coeffs();
    const int dq = q.degree();
    if (p.degree() < dq) {
        return {Poly(), p};
    }
    std::vector<Rational> quot(static_cast<std::size_t>(p.degree() - dq + 1));
    const Rational lead = q.leading();
    for (int i = p.degree(); i >= dq; --i) {
        const Rational f = rem[static_cast<std::size_t>(i)] / lead;
        quot[static_cast<std::size_t>(i - dq)] = f;
        if (f.is_zero()) {
            continue;
        }
        for (int j = 0; j <= dq; ++j) {
            rem[static_cast<std::size_t>(i - dq + j)] -= f * q.coeffs()[static_cast<std::size_t>(j)];
        }
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly poly_divexact(const Poly& p, const Poly& q) {
    auto [quot, rem] = poly_divmod(p, q);
    if (!rem.is_zero()) {
        throw NotDivisible("(" + p.str() + ") / (" + q.str() + ") leaves " + rem.str());
    }
    return quot;
}

Poly poly_gcd(const Poly& p, const Poly& q) {
    Poly a = p;
    Poly b = q;
    while (!b.is_zero()) {
        Poly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::vector<long> nonnegative_integer_roots(const Poly& p) {
    if (p.is_zero()) {
        throw Error("roots of the zero polynomial");
    }
    // Cauchy bound: every root satisfies |r| <= 1 + max |a_i / a_n|.
    Rational bound;
    for (const auto& c : p.coeffs()) {
        const Rational ratio = (c / p.leading()).abs();
        if (bound < ratio) {
            bound = ratio;
        }
    }
    const Integer limit = bound.num() / bound.den() + 2;
    std::vector<long> roots;
    for (long r = 0; Integer(r) <= limit; ++r) {
        if (p.eval(r).is_zero()) {
            roots.push_back(r);
        }
    }
    return roots;
}

}  // namespace zetacf
