#pragma once

#include <array>
#include <string>

#include "zetacf/poly.hpp"

namespace zetacf {

/// x -> (a x + b) / (c x + d) with polynomial entries in k, i.e. the 2x2
/// matrix [[a, b], [c, d]].
///
/// Construction does not normalize; operations that say so return the
/// canonical representative of the projective class (see normalized()).
class PolyMobius {
public:
    PolyMobius() : a_(1), b_(), c_(), d_(1) {}
    PolyMobius(Poly a, Poly b, Poly c, Poly d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

    static PolyMobius identity() { return {}; }
    /// The continued-fraction level x -> b + a/x, i.e. [[b, a], [1, 0]].
    static PolyMobius level(const Poly& b, const Poly& a) { return {b, a, Poly(1), Poly()}; }

    const Poly& a() const { return a_; }
    const Poly& b() const { return b_; }
    const Poly& c() const { return c_; }
    const Poly& d() const { return d_; }
    std::array<Poly, 4> entries() const { return {a_, b_, c_, d_}; }

    Poly det() const { return a_ * d_ - b_ * c_; }
    bool degenerate() const { return det().is_zero(); }
    bool is_constant() const;

    /// Raw matrix product (this after rhs as maps), not normalized.
    PolyMobius operator*(const PolyMobius& rhs) const;
    friend bool operator==(const PolyMobius&, const PolyMobius&) = default;

    /// Canonical representative: common polynomial factor removed, entries
    /// scaled to integer coefficients with unit content, and the first
    /// nonzero entry (in a, b, c, d order) given a positive leading
    /// coefficient. Throws DegenerateMap for the zero matrix.
    PolyMobius normalized() const;

    PolyMobius adjugate() const { return {d_, -b_, -c_, a_}; }
    /// Entries with k replaced by k + c.
    PolyMobius shifted(long c) const;
    /// Entries evaluated at a concrete index; the result has constant entries.
    PolyMobius at(long k) const;

    std::string str() const;

private:
    Poly a_, b_, c_, d_;
};

PolyMobius mobius_compose(const PolyMobius& m, const PolyMobius& n);
PolyMobius mobius_inverse(const PolyMobius& m);
/// True iff m = lambda * n for a nonzero scalar rational function lambda.
bool mobius_proj_eq(const PolyMobius& m, const PolyMobius& n);
/// Evaluates the entries at k and applies the map to x; throws PoleError when
/// the denominator vanishes.
Rational mobius_apply(const PolyMobius& m, const Rational& x, long k);

}  // namespace zetacf
