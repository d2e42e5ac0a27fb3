#pragma once

#include "fatpoint/affine.hpp"
#include "fatpoint/system.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fatpoint {

// Raised when a reduction rule is applied outside its hypotheses.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Rule {
  CremonaIso,        // dimension-preserving Cremona shift, all shifted values stay >= 0
  DegreeDrop,        // N points whose multiplicities exceed what degree d allows
  MergeEmpty,        // I(a)_k = 0 and I(b, k+1)_t = 0 give I(a, b)_t = 0
  ReduceFull,        // Cremona shift with negative results; nonzero input gives nonzero output
  ClampNonpositive,  // eventually nonpositive multiplicities impose nothing
  Contradiction,     // a multiplicity above the degree (or a negative degree)
  Axiom,             // a known Waldschmidt bound for uniform multiplicities
};

const char* to_string(Rule r);
Rule rule_from_string(std::string_view name);

// A cited lower bound on the Waldschmidt constant of `points` generic points.
// source is "evain" (k^N points, bound k) or "small-count" (N+1, N+2, N+3
// points).
struct AxiomCitation {
  std::string source;
  std::uint64_t points = 0;
  Rational bound;

  friend bool operator==(const AxiomCitation&, const AxiomCitation&) = default;
};

// Every catalogued axiom for exactly `points` generic points in P^N.
std::vector<AxiomCitation> axiom_candidates(int dimension, std::uint64_t points);

// The strongest catalogued axiom for exactly `points` generic points in P^N.
std::optional<AxiomCitation> known_axiom(int dimension, std::uint64_t points);

struct ReductionStep {
  Rule rule = Rule::ReduceFull;
  FatPointSystem input;
  // Shifted points (CremonaIso, ReduceFull: N+1; DegreeDrop: N), or the
  // witness run of a Contradiction (empty when the degree itself goes
  // negative).
  Pivot pivot;
  std::optional<AffineValue> k;
  std::optional<FatPointSystem> output;
  std::vector<std::size_t> refs;  // MergeEmpty: indices into Certificate::premises
  std::optional<AxiomCitation> axiom;
  Integer threshold = 1;

  friend bool operator==(const ReductionStep&, const ReductionStep&) = default;
};

// A replayable proof that `claim` is the zero space for every m >= m0.
struct Certificate {
  FatPointSystem claim;
  std::vector<ReductionStep> steps;
  std::vector<Certificate> premises;
  Integer m0 = 1;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// k = (N-1)d - sum of the pivot multiplicities. Throws std::invalid_argument
// when the pivot does not select exactly N+1 points.
AffineValue cremona_k(const FatPointSystem& sys, const Pivot& pivot);

// Adds k to each pivot point and to the degree.
FatPointSystem shift_points(const FatPointSystem& sys, const Pivot& pivot, const AffineValue& k);

// Applies the Cremona isomorphism. Requires every pivot multiplicity and every
// shifted multiplicity to be eventually nonnegative; throws PreconditionError
// otherwise (use reduce_full instead).
FatPointSystem cremona_step(const FatPointSystem& sys, const Pivot& pivot);

// Lowers the N largest multiplicities and the degree by one. Requires
// (N-1)d - sum < 0 and each of those multiplicities positive, eventually.
FatPointSystem degree_drop_step(const FatPointSystem& sys);

// Replaces every eventually nonpositive multiplicity by 0.
FatPointSystem clamp_nonpositive(const FatPointSystem& sys);

struct ReduceFullResult {
  FatPointSystem output;  // clamped
  AffineValue k;
  bool reducing = true;   // false when k is not eventually negative
};

// One Cremona reduction on the N+1 eventually largest multiplicities, with
// clamping. If the input is nonzero, so is the output.
ReduceFullResult reduce_full(const FatPointSystem& sys);
ReduceFullResult reduce_full(const FatPointSystem& sys, const Pivot& pivot);

// Combines a certificate for I(a)_k = 0 with one for I(b, k+1)_t = 0.
// Throws std::invalid_argument on a degree/multiplicity mismatch or when either
// input does not verify.
Certificate merge_empty(const Certificate& lower, const Certificate& upper);

// A one-step certificate citing a known Waldschmidt bound: claim must be
// L_N(D; M^s) with D < M * bound for all large m.
Certificate axiom_certificate(const FatPointSystem& claim);

struct ScriptEntry {
  Rule rule = Rule::ReduceFull;  // ReduceFull, CremonaIso or DegreeDrop
  Pivot pivot;
};

struct Strategy {
  enum class Kind { Greedy, Scripted };
  Kind kind = Kind::Greedy;
  std::vector<ScriptEntry> script;
  std::size_t budget = 64;

  static Strategy greedy(std::size_t budget = 64) { return {Kind::Greedy, {}, budget}; }
  static Strategy scripted(std::vector<ScriptEntry> script) {
    return {Kind::Scripted, std::move(script), 64};
  }
};

struct ProveResult {
  std::optional<Certificate> certificate;
  std::string failure;                   // set when no certificate was found
  std::vector<ReductionStep> attempted;  // steps taken before giving up

  bool ok() const { return certificate.has_value(); }
};

// Searches for an emptiness certificate. Failure is not a proof of
// nonemptiness.
ProveResult prove_empty(const FatPointSystem& sys, const Strategy& strategy = Strategy::greedy());

struct VerifyResult {
  bool ok = true;
  std::size_t failing_step = 0;  // == steps.size() for certificate-level problems
  std::string reason;

  explicit operator bool() const { return ok; }
};

VerifyResult verify_certificate(const Certificate& cert);

}  // namespace fatpoint
