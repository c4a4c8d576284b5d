#include "zetacf/chainverify.hpp"

#include <algorithm>
#include <array>

#include "zetacf/catalog.hpp"
#include "zetacf/error.hpp"

namespace zetacf {

namespace {

constexpr const char* kNormativeEnd = "N";

bool heads_equal(const Head& x, const Head& y) { return mobius_proj_eq(canonical_head(x), canonical_head(y)); }

// Seeds tried in order until backward evaluation avoids every pole.
Rational evaluate_with_fallback(const Stage& s, std::size_t depth) {
    const std::array<Rational, 3> seeds{Rational(1), Rational(1000000), Rational(2)};
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        try {
            return eval_backward(s, depth, seeds[i]);
        } catch (const PoleError&) {
            if (i + 1 == seeds.size()) throw;
        }
    }
    return {};
}

// sigma_k psi_k == phi_k sigma_{k+1}, checked independently of how psi was
// produced.
bool intertwines(const PolyMobius& sigma, const PolyMobius& psi, const PolyMobius& phi) {
    return mobius_proj_eq(sigma * psi, phi * sigma.shifted(1));
}

}  // namespace

bool ChainReport::allSymbolic() const {
    return !steps.empty() &&
           std::all_of(steps.begin(), steps.end(), [](const StepReport& r) { return r.symbolicPass; });
}

bool AlignmentReport::allEqual() const {
    return std::all_of(entries.begin(), entries.end(), [](const AlignmentEntry& e) { return e.equal; });
}

Stage derive_stage(const Stage& from, const SubstitutionStep& step) {
    if (step.fromStage != from.name) {
        throw ChainInconsistency(step.name, "expects stage " + step.fromStage + ", got " + from.name);
    }
    if (step.kind == StepKind::HeadPeel) {
        Stage out = peel_head(from);
        out.name = step.toStage;
        out.provenance = Provenance::Derived;
        out.anchor.clear();
        out.note = step.note;
        return out;
    }
    if (step.sigma.degenerate() || !nonnegative_integer_roots(step.sigma.det()).empty()) {
        throw DegenerateSigma(step.name);
    }
    if (!from.head) {
        throw ChainInconsistency(step.name, "source stage " + from.name + " has no head");
    }

    const PolyMobius phi = step_matrix(from);
    PolyMobius psi;
    try {
        psi = (step.sigma.adjugate() * phi * step.sigma.shifted(1)).normalized();
    } catch (const NotDivisible& e) {
        throw ChainInconsistency(step.name, e.what());
    }
    if (psi.degenerate()) {
        throw DegenerateSigma(step.name);
    }

    Stage out;
    out.name = step.toStage;
    out.provenance = Provenance::Derived;
    out.tail = psi;
    out.head = Head{mobius_compose(from.head->map, step.sigma.at(0)), from.head->target};
    out.note = step.note;
    return out;
}

Stage adopt_presentation(const Stage& derived, const Stage& claimed) {
    if (!mobius_proj_eq(step_matrix(derived), step_matrix(claimed))) {
        return derived;
    }
    Stage out = derived;
    out.levels = claimed.levels;
    out.pre = claimed.pre;
    out.tail = claimed.tail;
    out.anchor = claimed.anchor;
    return out;
}

StepReport verify_substitution(const Stage& from, const SubstitutionStep& step, const std::vector<Stage>& stages,
                               const VerifyConfig& config) {
    StepReport rep;
    rep.stepName = step.name;
    rep.fromStage = step.fromStage;
    rep.toStage = step.toStage;
    rep.note = step.note;

    Stage derived;
    try {
        derived = derive_stage(from, step);
    } catch (const Error& e) {
        rep.error = e.what();
        return rep;
    }

    const PolyMobius phi = step_matrix(from);
    const PolyMobius psi = step_matrix(derived);
    bool identity = false;
    bool head_ok = false;
    if (step.kind == StepKind::HeadPeel) {
        identity = mobius_proj_eq(psi, phi.shifted(1));
        head_ok = from.head && derived.head &&
                  mobius_proj_eq(derived.head->map, from.head->map * level_product(from).at(0));
    } else {
        identity = intertwines(step.sigma, psi, phi);
        head_ok = from.head && derived.head &&
                  mobius_proj_eq(canonical_head(*derived.head),
                                 canonical_head(*from.head) * step.sigma.at(0));
    }
    rep.symbolicPass = identity && head_ok;

    const Stage* claimed = nullptr;
    for (const auto& s : stages) {
        if (s.name == step.toStage) claimed = &s;
    }
    if (claimed == nullptr) {
        rep.error = ChainInconsistency(step.name, "stage " + step.toStage + " missing from catalog").what();
        rep.symbolicPass = false;
    } else {
        const PolyMobius claimed_step = step_matrix(*claimed);
        const bool step_eq = mobius_proj_eq(claimed_step, psi);
        if (!step_eq) {
            const auto c = claimed_step.entries();
            const auto d = psi.entries();
            const std::array<const char*, 4> names{"a", "b", "c", "d"};
            for (std::size_t i = 0; i < 4; ++i) {
                if (c[i] != d[i]) rep.mismatches.push_back({names[i], c[i].str(), d[i].str()});
            }
        }
        rep.headMatches = !claimed->head || heads_equal(*claimed->head, *derived.head);
        if (!rep.headMatches) {
            rep.mismatches.push_back(
                {"head", canonical_head(*claimed->head).str(), canonical_head(*derived.head).str()});
        }
        rep.claimedMatches = step_eq && rep.headMatches;
        if (step_eq) {
            derived = adopt_presentation(derived, *claimed);
        }
    }

    try {
        const ReferenceValue ref = zeta3_reference(config.referenceDigits, derived.head->target);
        const Rational value = evaluate_with_fallback(derived, config.residualDepth);
        rep.residual = (value - ref.value).abs();
        rep.numericPass = *rep.residual < Rational(Integer(1), ipow(10, static_cast<unsigned long>(
                                                                            config.residualExponent)));
    } catch (const Error& e) {
        rep.error += (rep.error.empty() ? "" : "; ") + std::string(e.what());
    }
    rep.derivedStage = std::move(derived);
    return rep;
}

bool verify_step_equivalence(const Stage& a, const Stage& b) {
    if (!mobius_proj_eq(step_matrix(a), step_matrix(b))) {
        return false;
    }
    if (a.head && b.head) {
        return heads_equal(*a.head, *b.head);
    }
    return true;
}

ChainReport verify_chain(const std::vector<Stage>& stages, const std::vector<SubstitutionStep>& chain,
                         const VerifyConfig& config) {
    ChainReport out;
    if (chain.empty()) {
        return out;
    }
    std::optional<Stage> current;
    try {
        current = find_stage(stages, chain.front().fromStage);
    } catch (const UnknownStage& e) {
        StepReport rep;
        rep.stepName = chain.front().name;
        rep.error = ChainInconsistency(chain.front().name, e.what()).what();
        out.steps.push_back(std::move(rep));
        return out;
    }

    for (const auto& step : chain) {
        if (!current) {
            StepReport rep;
            rep.stepName = step.name;
            rep.fromStage = step.fromStage;
            rep.toStage = step.toStage;
            rep.error = "skipped: upstream step failed";
            out.steps.push_back(std::move(rep));
            continue;
        }
        StepReport rep = verify_substitution(*current, step, stages, config);
        current = rep.derivedStage;
        out.steps.push_back(std::move(rep));
    }

    if (current && current->head) {
        for (const auto& s : stages) {
            if (s.name == kNormativeEnd) {
                out.finalMatchesNormative = mobius_proj_eq(step_matrix(*current), step_matrix(s));
            }
        }
        out.finalHeadOk = canonical_head(*current->head) == PolyMobius(2, 1, 1, 0);
    }
    return out;
}

std::vector<Stage> derived_chain(const std::vector<Stage>& stages, const std::vector<SubstitutionStep>& chain) {
    std::vector<Stage> out;
    if (chain.empty()) {
        return out;
    }
    out.push_back(find_stage(stages, chain.front().fromStage));
    for (const auto& step : chain) {
        Stage next = derive_stage(out.back(), step);
        for (const auto& s : stages) {
            if (s.name == step.toStage) next = adopt_presentation(next, s);
        }
        out.push_back(std::move(next));
    }
    return out;
}

TermList equivalence_scale(const TermList& prefix, const std::vector<Rational>& scale) {
    if (scale.size() != prefix.terms.size()) {
        throw InvalidScale("expected " + std::to_string(prefix.terms.size()) + " factors, got " +
                           std::to_string(scale.size()));
    }
    TermList out;
    out.b0 = prefix.b0;
    Rational prev(1);
    for (std::size_t i = 0; i < scale.size(); ++i) {
        if (scale[i].is_zero()) {
            throw InvalidScale("c_" + std::to_string(i + 1) + " = 0");
        }
        out.terms.push_back({prev * scale[i] * prefix.terms[i].a, scale[i] * prefix.terms[i].b});
        prev = scale[i];
    }
    return out;
}

AlignmentReport gutnik_alignment(const FlatCF& nes, const FlatCF& apery, std::size_t vMax) {
    if (vMax < 1) {
        throw Error("v-max must be at least 1");
    }
    constexpr int kWindow = 3;
    const std::size_t vCal = std::max<std::size_t>(vMax, 3);
    const auto nesConv = convergents(nes, 4 * vCal - 2 + kWindow);
    const auto apConv = convergents(apery, vCal + kWindow);

    auto index = [](long i) -> std::optional<std::size_t> {
        if (i < 0) return std::nullopt;
        return static_cast<std::size_t>(i);
    };
    auto matches = [&](std::size_t v, int d, int dp) {
        const auto i = index(4 * static_cast<long>(v) - 2 + d);
        const auto j = index(static_cast<long>(v) + dp);
        return i && j && *i < nesConv.size() && *j < apConv.size() &&
               nesConv[*i].value() == apConv[*j].value();
    };

    std::vector<std::pair<int, int>> candidates;
    for (int d = -kWindow; d <= kWindow; ++d) {
        for (int dp = -kWindow; dp <= kWindow; ++dp) candidates.emplace_back(d, dp);
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
        return std::abs(x.first) + std::abs(x.second) < std::abs(y.first) + std::abs(y.second);
    });

    for (const auto& [d, dp] : candidates) {
        if (!(matches(1, d, dp) && matches(2, d, dp) && matches(3, d, dp))) {
            continue;
        }
        AlignmentReport rep;
        rep.delta = d;
        rep.deltaPrime = dp;
        for (std::size_t v = 1; v <= vMax; ++v) {
            const auto i = index(4 * static_cast<long>(v) - 2 + d);
            const auto j = index(static_cast<long>(v) + dp);
            if (!i || !j) continue;
            AlignmentEntry e;
            e.v = v;
            e.nesIndex = *i;
            e.aperyIndex = *j;
            e.nesValue = nesConv[*i].value();
            e.aperyValue = apConv[*j].value();
            e.equal = e.nesValue == e.aperyValue;
            mpz_gcd(e.nesGcd.get_mpz_t(), nesConv[*i].p.get_mpz_t(), nesConv[*i].q.get_mpz_t());
            rep.entries.push_back(std::move(e));
        }
        return rep;
    }
    throw NoAlignmentFound();
}

}  // namespace zetacf
