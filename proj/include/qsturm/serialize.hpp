#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "qsturm/contfrac.hpp"
#include "qsturm/decompose.hpp"
#include "qsturm/model.hpp"

namespace qsturm {

using nlohmann::json;

/// {"coeffs": [...], "periodic": [...]} ("periodic" omitted when empty).
json to_json(const ContinuedFraction& cf);
ContinuedFraction cf_from_json(const json& j);

/// {"cf": ..., "substitution": {"a": ..., "b": ...}, "prefix": ..., "potential": {...},
///  "allow_non_injective": ...}. Potential keys are single-character labels.
json to_json(const ModelSpec& spec);
ModelSpec spec_from_json(const json& j);
ModelSpec load_spec(const std::string& path);

/**
 * Decomposition as a ModelSpec-shaped document: cf is rotation_cf of the
 * base, images and prefix are rendered with `alphabet`, potential values are
 * taken from `potential` where present and default to the symbol code.
 * Extra keys: base, theta, bispecial_length, analyzed_length.
 */
json to_json(const Decomposition& d, const Alphabet& alphabet, const json& potential);

/// FNV-1a 64 of the compact canonical JSON of the model, as 16 hex digits.
std::string fingerprint(const ModelSpec& spec);

/// 17 significant digits, '.' decimal, ".0" appended to integral values.
std::string format_double(double v);

}  // namespace qsturm
