#include "zetacf/mobius.hpp"

#include "zetacf/error.hpp"

namespace zetacf {

namespace {

Integer lcm_of_denominators(const std::array<Poly, 4>& entries) {
    Integer l = 1;
    for (const auto& p : entries) {
        for (const auto& c : p.coeffs()) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
        }
    }
    return l;
}

Integer gcd_of_numerators(const std::array<Poly, 4>& entries) {
    Integer g = 0;
    for (const auto& p : entries) {
        for (const auto& c : p.coeffs()) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.num().get_mpz_t());
        }
    }
    return g;
}

}  // namespace

bool PolyMobius::is_constant() const {
    return a_.is_constant() && b_.is_constant() && c_.is_constant() && d_.is_constant();
}

PolyMobius PolyMobius::operator*(const PolyMobius& rhs) const {
    return {a_ * rhs.a_ + b_ * rhs.c_, a_ * rhs.b_ + b_ * rhs.d_,
            c_ * rhs.a_ + d_ * rhs.c_, c_ * rhs.b_ + d_ * rhs.d_};
}

PolyMobius PolyMobius::normalized() const {
    std::array<Poly, 4> e = entries();
    Poly g;
    for (const auto& p : e) {
        g = poly_gcd(g, p);
    }
    if (g.is_zero()) {
        throw DegenerateMap("zero matrix");
    }
    for (auto& p : e) {
        p = poly_divexact(p, g);
    }

    // Integer coefficients with unit content.
    const Rational scale(lcm_of_denominators(e));
    for (auto& p : e) {
        p *= Poly(scale);
    }
    const Integer content = gcd_of_numerators(e);
    const Rational inv(Integer(1), content);
    for (auto& p : e) {
        p *= Poly(inv);
    }

    for (const auto& p : e) {
        if (!p.is_zero()) {
            if (p.leading().sign() < 0) {
                for (auto& q : e) {
                    q = -q;
                }
            }
            break;
        }
    }
    return {e[0], e[1], e[2], e[3]};
}

PolyMobius PolyMobius::shifted(long c) const {
    return {a_.shifted(c), b_.shifted(c), c_.shifted(c), d_.shifted(c)};
}

PolyMobius PolyMobius::at(long k) const {
    return {Poly(a_.eval(k)), Poly(b_.eval(k)), Poly(c_.eval(k)), Poly(d_.eval(k))};
}

std::string PolyMobius::str() const {
    return "[[" + a_.str() + ", " + b_.str() + "], [" + c_.str() + ", " + d_.str() + "]]";
}

PolyMobius mobius_compose(const PolyMobius& m, const PolyMobius& n) { return (m * n).normalized(); }

PolyMobius mobius_inverse(const PolyMobius& m) { return m.adjugate().normalized(); }

bool mobius_proj_eq(const PolyMobius& m, const PolyMobius& n) {
    const auto x = m.entries();
    const auto y = n.entries();
    bool m_zero = true;
    bool n_zero = true;
    for (std::size_t i = 0; i < 4; ++i) {
        m_zero = m_zero && x[i].is_zero();
        n_zero = n_zero && y[i].is_zero();
    }
    if (m_zero || n_zero) {
        return m_zero && n_zero;
    }
    // m and n are proportional iff every 2x2 minor of the 2x4 matrix
    // [x; y] vanishes.
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (!(x[i] * y[j] - x[j] * y[i]).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

Rational mobius_apply(const PolyMobius& m, const Rational& x, long k) {
    const Rational num = m.a().eval(k) * x + m.b().eval(k);
    const Rational den = m.c().eval(k) * x + m.d().eval(k);
    if (den.is_zero()) {
        throw PoleError(k, x.str());
    }
    return num / den;
}

}  // namespace zetacf
