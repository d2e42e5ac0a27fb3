#pragma once

#include "fatpoint/reduction.hpp"

#include <json.hpp>

#include <string>

namespace fatpoint {

using Json = nlohmann::json;

inline constexpr int kCertificateVersion = 1;

// Integers fit in a JSON number when they fit in 64 bits; larger ones are
// written as decimal strings. Both forms are accepted on input.
Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j);

Json affine_to_json(const AffineValue& v);  // [slope, intercept]
AffineValue affine_from_json(const Json& j);

Json rational_to_json(const Rational& r);  // {"num": .., "den": ..}
Rational rational_from_json(const Json& j);

// {"N": N, "degree": [s, i], "mults": [[s, i, count], ...]}
Json system_to_json(const FatPointSystem& sys);
FatPointSystem system_from_json(const Json& j);

// Step inputs are implied by the claim and the preceding outputs, so they are
// not written; parsing reconstructs them.
Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string serialize_certificate(const Certificate& cert);
Certificate parse_certificate(const std::string& text);

// Script files: an array of {"rule": .., "pivot": [..]} objects, or of bare
// pivots (shorthand for ReduceFull).
std::vector<ScriptEntry> parse_script(const std::string& text);

}  // namespace fatpoint
