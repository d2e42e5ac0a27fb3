#include "fatpoint/serialization.hpp"

#include <limits>
#include <stdexcept>

namespace fatpoint {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw std::invalid_argument("malformed certificate: " + what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

Pivot pivot_from_json(const Json& j) {
  if (!j.is_array()) malformed("pivot must be an array");
  Pivot p;
  for (const auto& e : j) {
    if (!e.is_number_unsigned()) malformed("pivot entries must be nonnegative integers");
    p.push_back(e.get<std::size_t>());
  }
  return p;
}

Json step_to_json(const ReductionStep& s) {
  Json j = {{"rule", to_string(s.rule)},
            {"pivot", s.pivot},
            {"refs", s.refs},
            {"threshold", integer_to_json(s.threshold)}};
  j["k"] = s.k ? affine_to_json(*s.k) : Json(nullptr);
  j["output"] = s.output ? system_to_json(*s.output) : Json(nullptr);
  if (s.axiom) {
    j["axiom"] = {{"source", s.axiom->source},
                  {"points", s.axiom->points},
                  {"bound", rational_to_json(s.axiom->bound)}};
  }
  return j;
}

ReductionStep step_from_json(const Json& j, const FatPointSystem& input) {
  ReductionStep s{.rule = rule_from_string(field(j, "rule").get<std::string>()), .input = input};
  s.pivot = pivot_from_json(field(j, "pivot"));
  if (const Json& k = field(j, "k"); !k.is_null()) s.k = affine_from_json(k);
  if (const Json& out = field(j, "output"); !out.is_null()) s.output = system_from_json(out);
  for (const auto& r : field(j, "refs")) {
    if (!r.is_number_unsigned()) malformed("refs entries must be nonnegative integers");
    s.refs.push_back(r.get<std::size_t>());
  }
  s.threshold = integer_from_json(field(j, "threshold"));
  if (j.contains("axiom")) {
    const Json& a = j.at("axiom");
    s.axiom = AxiomCitation{field(a, "source").get<std::string>(), field(a, "points").get<std::uint64_t>(),
                            rational_from_json(field(a, "bound"))};
  }
  return s;
}

}  // namespace

Json integer_to_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      malformed("bad integer string '" + s + "'");
    return Integer(s);
  }
  malformed("expected an integer");
}

Json affine_to_json(const AffineValue& v) { return Json::array({integer_to_json(v.slope), integer_to_json(v.intercept)}); }

AffineValue affine_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) malformed("affine value must be [slope, intercept]");
  return AffineValue(integer_from_json(j[0]), integer_from_json(j[1]));
}

Json rational_to_json(const Rational& r) {
  return {{"num", integer_to_json(numerator(r))}, {"den", integer_to_json(denominator(r))}};
}

Rational rational_from_json(const Json& j) {
  Integer den = integer_from_json(field(j, "den"));
  if (den == 0) malformed("zero denominator");
  return Rational(integer_from_json(field(j, "num")), den);
}

Json system_to_json(const FatPointSystem& sys) {
  Json mults = Json::array();
  for (const auto& r : sys.runs())
    mults.push_back({integer_to_json(r.value.slope), integer_to_json(r.value.intercept), r.count});
  return {{"N", sys.dimension()}, {"degree", affine_to_json(sys.degree())}, {"mults", mults}};
}

FatPointSystem system_from_json(const Json& j) {
  const Json& n = field(j, "N");
  if (!n.is_number_integer()) malformed("N must be an integer");
  std::vector<MultiplicityRun> runs;
  const Json& mults = field(j, "mults");
  if (!mults.is_array()) malformed("mults must be an array");
  for (const auto& m : mults) {
    if (!m.is_array() || m.size() != 3 || !m[2].is_number_unsigned())
      malformed("each mult must be [slope, intercept, count]");
    runs.push_back({AffineValue(integer_from_json(m[0]), integer_from_json(m[1])), m[2].get<std::uint64_t>()});
  }
  return FatPointSystem(n.get<int>(), affine_from_json(field(j, "degree")), std::move(runs));
}

Json certificate_to_json(const Certificate& cert) {
  Json steps = Json::array();
  for (const auto& s : cert.steps) steps.push_back(step_to_json(s));
  Json premises = Json::array();
  for (const auto& p : cert.premises) premises.push_back(certificate_to_json(p));
  return {{"version", kCertificateVersion},
          {"claim", system_to_json(cert.claim)},
          {"m0", integer_to_json(cert.m0)},
          {"steps", steps},
          {"premises", premises}};
}

Certificate certificate_from_json(const Json& j) {
  if (field(j, "version") != kCertificateVersion) malformed("unsupported version");
  Certificate cert{.claim = system_from_json(field(j, "claim"))};
  FatPointSystem current = cert.claim;
  const Json& steps = field(j, "steps");
  if (!steps.is_array()) malformed("steps must be an array");
  for (const auto& s : steps) {
    cert.steps.push_back(step_from_json(s, current));
    if (cert.steps.back().output) current = *cert.steps.back().output;
  }
  const Json& premises = field(j, "premises");
  if (!premises.is_array()) malformed("premises must be an array");
  for (const auto& p : premises) cert.premises.push_back(certificate_from_json(p));
  cert.m0 = integer_from_json(field(j, "m0"));
  return cert;
}

std::string serialize_certificate(const Certificate& cert) { return certificate_to_json(cert).dump(2) + "\n"; }

Certificate parse_certificate(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed(e.what());
  }
  try {
    return certificate_from_json(j);
  } catch (const Json::exception& e) {
    malformed(e.what());
  }
}

std::vector<ScriptEntry> parse_script(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed script: ") + e.what());
  }
  if (!j.is_array()) throw std::invalid_argument("malformed script: expected an array");
  std::vector<ScriptEntry> script;
  for (const auto& e : j) {
    if (e.is_array()) {
      script.push_back({Rule::ReduceFull, pivot_from_json(e)});
    } else {
      Rule r = rule_from_string(field(e, "rule").get<std::string>());
      if (r != Rule::ReduceFull && r != Rule::CremonaIso && r != Rule::DegreeDrop)
        throw std::invalid_argument(std::string("malformed script: rule ") + to_string(r) + " cannot be scripted");
      script.push_back({r, pivot_from_json(field(e, "pivot"))});
    }
  }
  return script;
}

}  // namespace fatpoint
