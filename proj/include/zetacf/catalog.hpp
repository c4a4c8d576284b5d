#pragma once

#include <string>
#include <vector>

#include "zetacf/stage.hpp"

namespace zetacf {

/// Every stage of the transformation chain, from the Apéry-form recurrence
/// for 2*zeta(3) to the period-4 Nesterenko form, in chain order.
///
/// APERY and N are normative. All other entries are transcriptions of the
/// printed displays and are stored as `Claimed`; several contain printing
/// errors that chain verification reports.
std::vector<Stage> catalog();

/// Ordered substitution steps turning APERY into N (and the terminal check
/// against the final display NF).
std::vector<SubstitutionStep> substitution_chain();

/// Throws UnknownStage.
const Stage& find_stage(const std::vector<Stage>& stages, const std::string& name);

/// Line-oriented key/value export, one `stage ... end` record per stage.
/// Polynomials are written as bracketed ascending coefficient lists.
std::string export_catalog(const std::vector<Stage>& stages);

/// Inverse of export_catalog. Throws Error on malformed input.
std::vector<Stage> parse_catalog(const std::string& text);

}  // namespace zetacf
