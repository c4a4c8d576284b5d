#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "zetacf/engine.hpp"
#include "zetacf/stage.hpp"

namespace zetacf {

struct VerifyConfig {
    std::size_t residualDepth = 25;
    std::size_t referenceDigits = 40;
    int residualExponent = 20;  // residual must be below 10^-residualExponent
};

struct Mismatch {
    std::string entry;  // "a", "b", "c", "d" or "head"
    std::string claimed;
    std::string derived;
};

struct StepReport {
    std::string stepName;
    std::string fromStage;
    std::string toStage;
    bool symbolicPass = false;
    bool claimedMatches = false;
    bool headMatches = false;
    std::optional<Stage> derivedStage;
    std::vector<Mismatch> mismatches;
    std::optional<Rational> residual;  // |value - target| at the configured depth
    bool numericPass = false;
    std::string note;
    std::string error;  // non-empty when the step could not be carried out
};

struct ChainReport {
    std::vector<StepReport> steps;
    bool finalMatchesNormative = false;
    bool finalHeadOk = false;

    bool allSymbolic() const;
    bool pass() const { return allSymbolic() && finalMatchesNormative && finalHeadOk; }
};

/// psi_k = sigma_k^{-1} phi_k sigma_{k+1}, head' = head * sigma_0. The result
/// is in matrix form (no levels). A head-peel step delegates to peel_head.
/// Throws DegenerateSigma or ChainInconsistency.
Stage derive_stage(const Stage& from, const SubstitutionStep& step);

/// Replaces the matrix-form derived stage by the claimed presentation when
/// the two are projectively equal; otherwise returns `derived` unchanged.
Stage adopt_presentation(const Stage& derived, const Stage& claimed);

/// Derives the step's target stage from `from` and checks it against the
/// claimed transcription found in `stages`. Failures are report content.
StepReport verify_substitution(const Stage& from, const SubstitutionStep& step, const std::vector<Stage>& stages,
                               const VerifyConfig& config = {});

/// Projectively equal step maps and, when both are stated, equal heads.
bool verify_step_equivalence(const Stage& a, const Stage& b);

/// Runs the whole chain starting from the normative APERY stage, threading
/// each derived stage into the next step.
ChainReport verify_chain(const std::vector<Stage>& stages, const std::vector<SubstitutionStep>& chain,
                         const VerifyConfig& config = {});

/// The normative stage sequence: APERY followed by every derived stage (with
/// the claimed presentation adopted where it was proven equal). Throws on
/// the first step that cannot be carried out.
std::vector<Stage> derived_chain(const std::vector<Stage>& stages, const std::vector<SubstitutionStep>& chain);

/// Equivalence transformation a_n -> c_{n-1} c_n a_n, b_n -> c_n b_n with
/// c_0 = 1. `scale` holds c_1 .. c_N. Throws InvalidScale on zero entries or
/// a length mismatch.
TermList equivalence_scale(const TermList& prefix, const std::vector<Rational>& scale);

struct AlignmentEntry {
    std::size_t v = 0;
    std::size_t nesIndex = 0;
    std::size_t aperyIndex = 0;
    bool equal = false;
    Rational nesValue;
    Rational aperyValue;
    Integer nesGcd;  // gcd(p, q) of the unreduced Nesterenko convergent
};

struct AlignmentReport {
    int delta = 0;       // Nesterenko index is 4v - 2 + delta
    int deltaPrime = 0;  // Apéry index is v + deltaPrime
    std::vector<AlignmentEntry> entries;

    bool allEqual() const;
};

/// Calibrates the offset pair on v = 1, 2, 3 and compares for 1 <= v <= vMax.
/// Throws NoAlignmentFound.
AlignmentReport gutnik_alignment(const FlatCF& nes, const FlatCF& apery, std::size_t vMax);

}  // namespace zetacf
