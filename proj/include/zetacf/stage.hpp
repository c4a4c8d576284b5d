#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "zetacf/mobius.hpp"

namespace zetacf {

enum class TargetConstant { Zeta3, TwoZeta3 };

std::string to_string(TargetConstant t);
TargetConstant target_from_string(const std::string& s);

/// One nesting depth: b + a / (next level). `a` is never zero.
struct Level {
    Poly b;
    Poly a;
};

/// Constant map sending X_0 to the target constant.
struct Head {
    PolyMobius map;
    TargetConstant target = TargetConstant::TwoZeta3;
};

enum class Provenance {
    Normative,  // endpoint taken as ground truth
    Claimed,    // transcribed display, compared but never trusted
    Derived,    // produced by a substitution from the previous stage
};

std::string to_string(Provenance p);

/// Tail recurrence X_k = pre_k( L_1( L_2( ... L_d( tail_k(X_{k+1}) ) ) ) ),
/// where L_i is the level x -> b_i(k) + a_i(k)/x.
///
/// Most displays are pure level products (pre and tail are the identity).
/// Displays in which X_{k+1} enters additively or coefficients are rational
/// functions use the two general factors. A stage with no levels is stored
/// in matrix form: its whole step is `tail`.
struct Stage {
    std::string name;
    std::vector<Level> levels;
    PolyMobius pre;
    PolyMobius tail;
    std::optional<Head> head;
    Provenance provenance = Provenance::Claimed;
    std::string anchor;  // the display this stage transcribes
    std::string note;

    std::size_t depth() const { return levels.size(); }
    bool is_level_form() const { return !levels.empty() && pre == PolyMobius() && tail == PolyMobius(); }
};

/// Throws DegenerateStep / DegenerateMap when an invariant is violated.
void validate(const Stage& s);

/// Raw product pre * L_1 * ... * L_d * tail.
PolyMobius level_product(const Stage& s);
/// Normalized step map; throws DegenerateStep for a singular product.
PolyMobius step_matrix(const Stage& s);

/// Head rewritten to produce 2*zeta(3), normalized. Heads are compared in
/// this form.
PolyMobius canonical_head(const Head& h);
/// The same head re-expressed for another target constant.
Head express_head(const Head& h, TargetConstant target);

/// Absorbs the k = 0 step into the head and shifts every coefficient k -> k+1.
Stage peel_head(const Stage& s);

/// Finite continued fraction b0 + a_1/(b_1 + a_2/(... + a_n/b_n)).
struct TermList {
    struct Term {
        Rational a;
        Rational b;
    };
    Rational b0;
    std::vector<Term> terms;  // terms[n-1] holds (a_n, b_n)
};

/// Periodic flat continued fraction.
///
/// For n >= 1 with n - 1 = p*m + j: b_n = bFam[j](m), a_n = aFam[j](m).
/// a_1 is fixed by the head; positions where a family value is replaced are
/// listed in `exceptions`.
struct FlatCF {
    struct Override {
        std::size_t n;
        std::optional<Rational> a;
        std::optional<Rational> b;
    };

    std::string name;
    Rational b0;
    Rational a1;
    std::size_t period = 1;
    std::vector<Poly> aFam;
    std::vector<Poly> bFam;
    std::vector<Override> exceptions;
    TargetConstant target = TargetConstant::TwoZeta3;

    Rational a(std::size_t n) const;
    Rational b(std::size_t n) const;
    TermList prefix(std::size_t n) const;
};

FlatCF flatten(const Stage& s);

/// Checks b_n != 0 for 1 <= n <= nMax and a_n != 0 for 2 <= n <= nMax.
bool terms_nonzero(const FlatCF& f, std::size_t nMax);

enum class StepKind { HeadPeel, Substitution };

/// X^{from}_k = sigma_k(X^{to}_k).
struct SubstitutionStep {
    std::string name;
    std::string fromStage;
    std::string toStage;
    StepKind kind = StepKind::Substitution;
    PolyMobius sigma;
    std::string note;
};

}  // namespace zetacf
