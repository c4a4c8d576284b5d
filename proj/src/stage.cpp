#include "zetacf/stage.hpp"

#include "zetacf/error.hpp"

namespace zetacf {

std::string to_string(TargetConstant t) { return t == TargetConstant::Zeta3 ? "ZETA3" : "TWO_ZETA3"; }

TargetConstant target_from_string(const std::string& s) {
    if (s == "ZETA3") return TargetConstant::Zeta3;
    if (s == "TWO_ZETA3") return TargetConstant::TwoZeta3;
    throw Error("unknown target constant: " + s);
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Normative:
            return "normative";
        case Provenance::Claimed:
            return "claimed";
        case Provenance::Derived:
            return "derived";
    }
    return "?";
}

void validate(const Stage& s) {
    for (const auto& level : s.levels) {
        if (level.a.is_zero()) {
            throw DegenerateStep(s.name + " (zero partial numerator)");
        }
    }
    if (level_product(s).degenerate()) {
        throw DegenerateStep(s.name);
    }
    if (s.head) {
        if (!s.head->map.is_constant()) {
            throw DegenerateMap("head of " + s.name + " depends on k");
        }
        if (s.head->map.degenerate()) {
            throw DegenerateMap("head of " + s.name);
        }
    }
}

PolyMobius level_product(const Stage& s) {
    PolyMobius m = s.pre;
    for (const auto& level : s.levels) {
        m = m * PolyMobius::level(level.b, level.a);
    }
    return m * s.tail;
}

PolyMobius step_matrix(const Stage& s) {
    const PolyMobius m = level_product(s);
    if (m.degenerate()) {
        throw DegenerateStep(s.name);
    }
    return m.normalized();
}

PolyMobius canonical_head(const Head& h) {
    if (h.target == TargetConstant::Zeta3) {
        return mobius_compose(PolyMobius(2, 0, 0, 1), h.map);
    }
    return h.map.normalized();
}

Head express_head(const Head& h, TargetConstant target) {
    if (h.target == target) {
        return {h.map.normalized(), target};
    }
    if (target == TargetConstant::Zeta3) {
        return {mobius_compose(PolyMobius(1, 0, 0, 2), h.map), target};
    }
    return {mobius_compose(PolyMobius(2, 0, 0, 1), h.map), target};
}

Stage peel_head(const Stage& s) {
    if (!s.head) {
        throw Error("stage " + s.name + " has no head to peel into");
    }
    Stage out = s;
    out.head->map = mobius_compose(s.head->map, level_product(s).at(0));
    out.pre = s.pre.shifted(1);
    out.tail = s.tail.shifted(1);
    for (auto& level : out.levels) {
        level.b = level.b.shifted(1);
        level.a = level.a.shifted(1);
    }
    return out;
}

Rational FlatCF::a(std::size_t n) const {
    if (n == 0) {
        throw Error("a_0 is not defined");
    }
    if (n == 1) {
        return a1;
    }
    for (const auto& e : exceptions) {
        if (e.n == n && e.a) {
            return *e.a;
        }
    }
    const std::size_t m = (n - 1) / period;
    return aFam[(n - 1) % period].eval(static_cast<long>(m));
}

Rational FlatCF::b(std::size_t n) const {
    if (n == 0) {
        return b0;
    }
    for (const auto& e : exceptions) {
        if (e.n == n && e.b) {
            return *e.b;
        }
    }
    const std::size_t m = (n - 1) / period;
    return bFam[(n - 1) % period].eval(static_cast<long>(m));
}

TermList FlatCF::prefix(std::size_t n) const {
    TermList out;
    out.b0 = b0;
    out.terms.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        out.terms.push_back({a(i), b(i)});
    }
    return out;
}

FlatCF flatten(const Stage& s) {
    if (!s.is_level_form()) {
        throw StageNotFlattenable(s.name);
    }
    if (!s.head) {
        throw HeadNotFlattenable(s.name);
    }
    const PolyMobius h = s.head->map.normalized();
    const Rational alpha = h.a().eval(0);
    const Rational beta = h.b().eval(0);
    const Rational gamma = h.c().eval(0);
    const Rational delta = h.d().eval(0);

    FlatCF f;
    f.name = s.name;
    f.target = s.head->target;
    f.period = s.levels.size();
    std::vector<Level> effective;
    if (!gamma.is_zero() && delta.is_zero()) {
        // target = alpha/gamma + (beta/gamma) / X_0
        f.b0 = alpha / gamma;
        f.a1 = beta / gamma;
        effective = s.levels;
    } else if (gamma.is_zero()) {
        // target = (alpha X_0 + beta) / delta: the first level of X_0 becomes
        // the leading term and the remaining levels rotate one place.
        const Rational scale = alpha / delta;
        const Rational offset = beta / delta;
        f.b0 = scale * s.levels.front().b.eval(0) + offset;
        f.a1 = scale * s.levels.front().a.eval(0);
        effective.assign(s.levels.begin() + 1, s.levels.end());
        effective.push_back({s.levels.front().b.shifted(1), s.levels.front().a.shifted(1)});
    } else {
        throw HeadNotFlattenable(s.name);
    }

    for (std::size_t j = 0; j < f.period; ++j) {
        f.bFam.push_back(effective[j].b);
        // The numerator under level j feeds index n + 1; the last level's
        // numerator closes the block and opens the next one.
        f.aFam.push_back(j == 0 ? effective.back().a.shifted(-1) : effective[j - 1].a);
    }
    if (f.aFam[0].eval(0) != f.a1) {
        f.exceptions.push_back({1, f.a1, std::nullopt});
    }
    return f;
}

bool terms_nonzero(const FlatCF& f, std::size_t nMax) {
    for (std::size_t n = 1; n <= nMax; ++n) {
        if (f.b(n).is_zero() || (n >= 2 && f.a(n).is_zero())) {
            return false;
        }
    }
    return true;
}

}  // namespace zetacf
