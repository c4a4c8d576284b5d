#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "zetacf/catalog.hpp"
#include "zetacf/engine.hpp"
#include "zetacf/error.hpp"

using namespace zetacf;

namespace {

const Poly K = Poly::k();

Poly kp(long c) { return K + Poly(c); }

// Nested truncation with n levels: the innermost level keeps only its b.
Rational nested_truncation(const Stage& s, std::size_t n) {
    std::vector<std::pair<Rational, Rational>> terms;  // (b, a)
    for (long k = 0; terms.size() < n; ++k) {
        for (const auto& level : s.levels) {
            if (terms.size() == n) break;
            terms.emplace_back(level.b.eval(k), level.a.eval(k));
        }
    }
    Rational x = terms.back().first;
    for (std::size_t i = terms.size() - 1; i-- > 0;) {
        x = terms[i].first + terms[i].second / x;
    }
    return mobius_apply(s.head->map, x, 0);
}

Rational flat_value(const FlatCF& f, std::size_t n) {
    const TermList t = f.prefix(n);
    if (t.terms.empty()) return t.b0;
    Rational x = t.terms.back().b;
    for (std::size_t i = t.terms.size() - 1; i-- > 0;) {
        x = t.terms[i].b + t.terms[i + 1].a / x;
    }
    return t.b0 + t.terms[0].a / x;
}

void check_same_stage(const Stage& a, const Stage& b) {
    CHECK(a.name == b.name);
    REQUIRE(a.levels.size() == b.levels.size());
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
        CHECK(a.levels[i].b == b.levels[i].b);
        CHECK(a.levels[i].a == b.levels[i].a);
    }
    CHECK(a.pre == b.pre);
    CHECK(a.tail == b.tail);
    REQUIRE(a.head.has_value() == b.head.has_value());
    if (a.head) {
        CHECK(a.head->map == b.head->map);
        CHECK(a.head->target == b.head->target);
    }
    CHECK(a.provenance == b.provenance);
    CHECK(a.anchor == b.anchor);
    CHECK(a.note == b.note);
}

}  // namespace

TEST_CASE("step_matrix of the Apéry stage") {
    const auto stages = catalog();
    const PolyMobius m = step_matrix(find_stage(stages, "APERY"));
    CHECK(m == PolyMobius(Poly{5, 27, 51, 34}, -kp(1).pow(6), 1, 0));
    CHECK(m.a().str() == "34k^3 + 51k^2 + 27k + 5");
}

TEST_CASE("step_matrix of the N stage is the product of its four levels") {
    const auto stages = catalog();
    const Stage& n = find_stage(stages, "N");
    REQUIRE(n.depth() == 4);
    const PolyMobius expected = PolyMobius::level(2 * K + 2, kp(1) * kp(2)) *
                                PolyMobius::level(2 * K + 4, kp(1).pow(2)) *
                                PolyMobius::level(2 * K + 3, kp(2).pow(2)) *
                                PolyMobius::level(2 * K + 2, kp(1) * kp(2));
    CHECK(step_matrix(n) == expected.normalized());
    CHECK(mobius_proj_eq(step_matrix(n), expected));
}

TEST_CASE("step_matrix of a single level") {
    Stage s;
    s.name = "one";
    s.levels = {Level{K * K + 3, kp(1)}};
    CHECK(step_matrix(s) == PolyMobius(K * K + 3, kp(1), 1, 0));
}

TEST_CASE("step_matrix rejects a singular product") {
    Stage s;
    s.name = "flat";
    s.tail = PolyMobius(K, K, 1, 1);
    CHECK_THROWS_AS(step_matrix(s), DegenerateStep);
}

TEST_CASE("catalog heads") {
    const auto stages = catalog();
    const Rational x = rat_make(7, 3);
    const Stage& apery = find_stage(stages, "APERY");
    REQUIRE(apery.head);
    CHECK(mobius_apply(apery.head->map, x, 0) == Rational(12) / x);
    CHECK(apery.head->target == TargetConstant::TwoZeta3);

    const Stage& n = find_stage(stages, "N");
    REQUIRE(n.head);
    CHECK(mobius_apply(n.head->map, x, 0) == Rational(2) + Rational(1) / x);
    CHECK(n.head->target == TargetConstant::TwoZeta3);

    const Stage& q = find_stage(stages, "Q12");
    REQUIRE(q.head);
    CHECK(mobius_apply(q.head->map, x, 0) == x);
    CHECK(q.head->target == TargetConstant::Zeta3);
}

TEST_CASE("catalog stages are well formed") {
    const auto stages = catalog();
    CHECK(stages.size() == 16);
    for (const auto& s : stages) {
        CAPTURE(s.name);
        CHECK_NOTHROW(validate(s));
        CHECK_FALSE(s.anchor.empty());
    }
    CHECK(find_stage(stages, "APERY").provenance == Provenance::Normative);
    CHECK(find_stage(stages, "N").provenance == Provenance::Normative);
    CHECK_THROWS_AS(find_stage(stages, "BOGUS"), UnknownStage);
}

TEST_CASE("validate rejects a zero numerator and a k-dependent head") {
    Stage s;
    s.name = "bad";
    s.levels = {Level{K, Poly()}};
    CHECK_THROWS_AS(validate(s), DegenerateStep);

    s.levels = {Level{K, Poly(1)}};
    s.head = Head{PolyMobius(K, 0, 0, 1), TargetConstant::TwoZeta3};
    CHECK_THROWS_AS(validate(s), DegenerateMap);

    s.head = Head{PolyMobius(1, 1, 1, 1), TargetConstant::TwoZeta3};
    CHECK_THROWS_AS(validate(s), DegenerateMap);
}

TEST_CASE("determinant of the level product") {
    for (const auto& s : catalog()) {
        CAPTURE(s.name);
        Poly expected = s.pre.det() * s.tail.det();
        for (const auto& level : s.levels) expected = expected * level.a;
        if (s.depth() % 2 == 1) expected = -expected;
        CHECK(level_product(s).det() == expected);
    }
}

TEST_CASE("flatten the N stage") {
    const FlatCF f = flatten(find_stage(catalog(), "N"));
    CHECK(f.b0 == 2);
    CHECK(f.a1 == 1);
    CHECK(f.period == 4);
    const std::vector<long> b = {2, 4, 3, 2, 4, 6, 5, 4, 6, 8, 7, 6};
    for (std::size_t n = 1; n <= b.size(); ++n) {
        CAPTURE(n);
        CHECK(f.b(n) == b[n - 1]);
    }
    const std::vector<long> a = {2, 1, 4, 2, 6, 4, 9, 6};  // a_2 .. a_9
    for (std::size_t n = 2; n <= 9; ++n) {
        CAPTURE(n);
        CHECK(f.a(n) == a[n - 2]);
    }
    CHECK(f.exceptions.size() == 1);
    CHECK(f.exceptions[0].n == 1);
}

TEST_CASE("flattened N stage follows the period-4 families") {
    const FlatCF f = flatten(find_stage(catalog(), "N"));
    for (long k = 0; k < 60; ++k) {
        CAPTURE(k);
        const auto n = static_cast<std::size_t>(4 * k);
        CHECK(f.b(n + 1) == 2 * k + 2);
        CHECK(f.b(n + 2) == 2 * k + 4);
        CHECK(f.b(n + 3) == 2 * k + 3);
        CHECK(f.b(n + 4) == 2 * k + 2);
        if (k > 0) CHECK(f.a(n + 1) == k * (k + 1));
        CHECK(f.a(n + 2) == (k + 1) * (k + 2));
        CHECK(f.a(n + 3) == (k + 1) * (k + 1));
        CHECK(f.a(n + 4) == (k + 2) * (k + 2));
    }
    CHECK(terms_nonzero(f, 400));
}

TEST_CASE("flatten the Apéry stage") {
    const FlatCF f = flatten(find_stage(catalog(), "APERY"));
    CHECK(f.b0 == 0);
    CHECK(f.a1 == 12);
    CHECK(f.period == 1);
    for (long n = 1; n <= 40; ++n) {
        CAPTURE(n);
        const long m = n - 1;
        CHECK(f.b(static_cast<std::size_t>(n)) == 34 * m * m * m + 51 * m * m + 27 * m + 5);
        const Integer n6 = ipow(Integer(n), 6);
        CHECK(f.a(static_cast<std::size_t>(n + 1)) == Rational(-n6));
    }
    CHECK(terms_nonzero(f, 200));
}

TEST_CASE("flatten rejects unsupported heads and matrix-form stages") {
    Stage s;
    s.name = "odd";
    s.levels = {Level{K + 1, Poly(1)}};
    s.head = Head{PolyMobius(1, 2, 3, 4), TargetConstant::TwoZeta3};
    CHECK_THROWS_AS(flatten(s), HeadNotFlattenable);

    Stage m;
    m.name = "matrix";
    m.tail = PolyMobius(K + 1, 1, 1, 0);
    m.head = Head{PolyMobius(), TargetConstant::TwoZeta3};
    CHECK_THROWS_AS(flatten(m), StageNotFlattenable);
}

TEST_CASE("flat truncations agree with nested truncations") {
    for (const auto& s : catalog()) {
        if (!s.is_level_form() || !s.head) continue;
        FlatCF f;
        try {
            f = flatten(s);
        } catch (const HeadNotFlattenable&) {
            continue;
        }
        CAPTURE(s.name);
        // A head without a pole absorbs the first level into b0.
        const std::size_t offset = s.head->map.c().is_zero() ? 1 : 0;
        for (std::size_t n = 1; n <= 24; ++n) {
            CAPTURE(n);
            CHECK(flat_value(f, n) == nested_truncation(s, n + offset));
        }
    }
}

TEST_CASE("peel_head of the Apéry stage") {
    const auto stages = catalog();
    const Stage& apery = find_stage(stages, "APERY");
    const Stage peeled = peel_head(apery);
    REQUIRE(peeled.head);
    const Rational x = rat_make(3, 7);
    CHECK(mobius_apply(peeled.head->map, x, 0) == Rational(12) / (Rational(5) - Rational(1) / x));
    CHECK(peeled.levels[0].b == Poly{117, 231, 153, 34});
    CHECK(peeled.levels[0].b == 34 * kp(1).pow(3) + 51 * kp(1).pow(2) + 27 * kp(1) + 5);
    CHECK(peeled.levels[0].a == -kp(2).pow(6));
    CHECK(peeled.head->target == apery.head->target);
}

TEST_CASE("peeling twice absorbs the k = 0 and k = 1 steps") {
    const auto stages = catalog();
    const Stage& n = find_stage(stages, "N");
    const Stage twice = peel_head(peel_head(n));
    const PolyMobius absorbed = n.head->map * level_product(n).at(0) * level_product(n).at(1);
    CHECK(mobius_proj_eq(twice.head->map, absorbed));
    for (std::size_t i = 0; i < n.depth(); ++i) {
        CHECK(twice.levels[i].b == n.levels[i].b.shifted(2));
        CHECK(twice.levels[i].a == n.levels[i].a.shifted(2));
    }
}

TEST_CASE("peel_head preserves evaluated values") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(1, 50);
    const auto stages = catalog();
    for (const auto& s : stages) {
        if (!s.head) continue;
        CAPTURE(s.name);
        const Stage peeled = peel_head(s);
        for (int trial = 0; trial < 5; ++trial) {
            const Rational seed = rat_make(num(rng), num(rng));
            const std::size_t m = static_cast<std::size_t>(num(rng) % 6);
            CHECK(eval_backward(s, m + 1, seed) == eval_backward(peeled, m, seed));
        }
    }
}

TEST_CASE("substitution chain sigmas") {
    const auto chain = substitution_chain();
    auto sigma = [&](const std::string& name) {
        for (const auto& s : chain) {
            if (s.name == name) return s.sigma;
        }
        FAIL("missing step " << name);
        return PolyMobius();
    };
    CHECK(chain.front().kind == StepKind::HeadPeel);
    CHECK(chain.front().fromStage == "APERY");
    CHECK(sigma("W") == PolyMobius(1, 5 * kp(1).pow(3), 0, 1));
    CHECK(sigma("U") == PolyMobius(6 * kp(1), 0, 0, 1));
    CHECK(sigma("P") == PolyMobius(kp(1).pow(2), 0, 0, 1));
    CHECK(mobius_proj_eq(sigma("Q"), mobius_inverse(PolyMobius(6, 5, 5, 4))));
    CHECK(sigma("H") == PolyMobius(1, 0, 0, 2));
    CHECK(sigma("G") == PolyMobius(2, 1, 1, 0));
    CHECK(mobius_proj_eq(sigma("N"), PolyMobius(1, 0, 0, kp(1))));
    for (std::size_t i = 1; i < chain.size(); ++i) {
        CHECK(chain[i].fromStage == chain[i - 1].toStage);
        CHECK(nonnegative_integer_roots(chain[i].sigma.det()).empty());
    }
}

TEST_CASE("Q sigma is the three constant levels (1,1), (4,1), (1,1)") {
    const PolyMobius levels = PolyMobius::level(1, 1) * PolyMobius::level(4, 1) * PolyMobius::level(1, 1);
    CHECK(mobius_proj_eq(levels, PolyMobius(6, 5, 5, 4)));
}

TEST_CASE("catalog export round trip") {
    const auto stages = catalog();
    const std::string text = export_catalog(stages);
    const auto parsed = parse_catalog(text);
    REQUIRE(parsed.size() == stages.size());
    for (std::size_t i = 0; i < stages.size(); ++i) check_same_stage(parsed[i], stages[i]);
    CHECK(export_catalog(parsed) == text);
    CHECK_THROWS_AS(parse_catalog("stage X\nlevel [1\nend\n"), Error);
}

TEST_CASE("target constants") {
    CHECK(to_string(TargetConstant::Zeta3) == "ZETA3");
    CHECK(to_string(TargetConstant::TwoZeta3) == "TWO_ZETA3");
    CHECK(target_from_string("ZETA3") == TargetConstant::Zeta3);
    CHECK_THROWS_AS(target_from_string("PI"), Error);
}
