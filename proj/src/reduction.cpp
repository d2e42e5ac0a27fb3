#include "fatpoint/reduction.hpp"

#include <algorithm>
#include <sstream>

namespace fatpoint {

namespace {

Integer max_of(const Integer& a, const Integer& b) { return a < b ? b : a; }

[[noreturn]] void fail(const std::string& msg) { throw PreconditionError(msg); }

struct StepOutcome {
  std::optional<FatPointSystem> output;
  std::optional<AffineValue> k;
  Integer threshold = 1;
};

// Each kernel re-derives a step from its input and side data. Construction and
// verification both go through these.

StepOutcome cremona_kernel(const FatPointSystem& in, const Pivot& pivot) {
  AffineValue k = cremona_k(in, pivot);
  Integer thr = 1;
  for (auto idx : pivot) {
    const AffineValue& v = in.runs()[idx].value;
    Integer before = nonnegative_from(v);
    Integer after = nonnegative_from(v + k);
    if (before == 0) fail("pivot multiplicity " + v.str() + " is eventually negative");
    if (after == 0) fail("shifted multiplicity " + (v + k).str() + " is eventually negative");
    thr = max_of(thr, max_of(before, after));
  }
  return {shift_points(in, pivot, k), k, thr};
}

StepOutcome reduce_full_kernel(const FatPointSystem& in, const Pivot& pivot) {
  AffineValue k = cremona_k(in, pivot);
  Integer thr = 1;
  for (auto idx : pivot) {
    const AffineValue& v = in.runs()[idx].value;
    Integer from = nonnegative_from(v);
    if (from == 0) fail("pivot multiplicity " + v.str() + " is eventually negative; clamp first");
    thr = max_of(thr, from);
  }
  return {shift_points(in, pivot, k), k, thr};
}

StepOutcome degree_drop_kernel(const FatPointSystem& in, const Pivot& pivot) {
  const int n = in.dimension();
  if (pivot.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("degree drop needs exactly N points");
  validate_pivot(in, pivot);
  AffineValue excess = Integer(n - 1) * in.degree();
  Integer thr = 1;
  for (auto idx : pivot) {
    const AffineValue& v = in.runs()[idx].value;
    EventualSign s = eventual_sign(v);
    if (s.sign != Sign::Positive) fail("multiplicity " + v.str() + " is not eventually positive");
    thr = max_of(thr, s.threshold);
    excess -= v;
  }
  EventualSign es = eventual_sign(excess);
  if (es.sign != Sign::Negative) fail("(N-1)d - sum = " + excess.str() + " is not eventually negative");
  thr = max_of(thr, es.threshold);
  return {shift_points(in, pivot, AffineValue::constant(-1)), excess, thr};
}

bool needs_clamp(const FatPointSystem& sys) {
  return std::any_of(sys.runs().begin(), sys.runs().end(), [](const MultiplicityRun& r) {
    return eventual_sign(r.value).sign != Sign::Positive && r.value != AffineValue{};
  });
}

StepOutcome clamp_kernel(const FatPointSystem& in) {
  if (!needs_clamp(in)) fail("no multiplicity to clamp");
  Integer thr = 1;
  std::vector<MultiplicityRun> runs;
  for (const auto& r : in.runs()) {
    if (eventual_sign(r.value).sign != Sign::Positive) {
      thr = max_of(thr, nonpositive_from(r.value));
      runs.push_back({AffineValue{}, r.count});
    } else {
      runs.push_back(r);
    }
  }
  return {FatPointSystem(in.dimension(), in.degree(), std::move(runs)), std::nullopt, thr};
}

// Threshold from which the witness proves emptiness, or nullopt.
std::optional<Integer> contradiction_threshold(const FatPointSystem& in, const Pivot& witness) {
  if (witness.empty()) {
    EventualSign s = eventual_sign(in.degree());
    if (s.sign != Sign::Negative) return std::nullopt;
    return s.threshold;
  }
  if (witness.size() != 1 || witness[0] >= in.runs().size()) return std::nullopt;
  EventualSign s = eventual_sign(in.runs()[witness[0]].value - in.degree());
  if (s.sign != Sign::Positive) return std::nullopt;
  return s.threshold;
}

std::optional<std::pair<Pivot, Integer>> find_contradiction(const FatPointSystem& sys) {
  std::optional<std::pair<Pivot, Integer>> best;
  for (std::size_t i = 0; i < sys.runs().size(); ++i) {
    auto thr = contradiction_threshold(sys, {i});
    if (thr && (!best || *thr < best->second)) best = std::make_pair(Pivot{i}, *thr);
  }
  if (!best) {
    if (auto thr = contradiction_threshold(sys, {})) best = std::make_pair(Pivot{}, *thr);
  }
  return best;
}

FatPointSystem merged_claim(const FatPointSystem& lower, const FatPointSystem& upper) {
  if (lower.dimension() != upper.dimension()) throw std::invalid_argument("merge: dimension mismatch");
  const AffineValue target = lower.degree() + AffineValue::constant(1);
  std::vector<MultiplicityRun> runs;
  bool removed = false;
  for (const auto& r : upper.runs()) {
    if (!removed && r.value == target) {
      removed = true;
      if (r.count > 1) runs.push_back({r.value, r.count - 1});
    } else {
      runs.push_back(r);
    }
  }
  if (!removed)
    throw std::invalid_argument("merge: " + upper.str() + " has no point of multiplicity " + target.str());
  for (const auto& r : lower.runs()) runs.push_back(r);
  return FatPointSystem(upper.dimension(), upper.degree(), std::move(runs));
}

Integer axiom_threshold(const FatPointSystem& claim, const AxiomCitation& cite) {
  if (claim.runs().size() != 1 || claim.runs()[0].count != cite.points)
    fail("axiom claim must be " + std::to_string(cite.points) + " points of one multiplicity");
  auto all = axiom_candidates(claim.dimension(), cite.points);
  bool matches = std::find(all.begin(), all.end(), cite) != all.end();
  if (!matches) fail("unknown axiom " + cite.source + " for " + std::to_string(cite.points) + " points");
  // D < M * p/q  <=>  p*M - q*(D+1) >= 0
  const Integer p = numerator(cite.bound);
  const Integer q = denominator(cite.bound);
  AffineValue slack = claim.runs()[0].value * p - (claim.degree() + AffineValue::constant(1)) * q;
  Integer thr = nonnegative_from(slack);
  if (thr == 0) fail("degree " + claim.degree().str() + " is not below the cited bound");
  return thr;
}

VerifyResult bad(std::size_t step, std::string reason) { return {false, step, std::move(reason)}; }

}  // namespace

const char* to_string(Rule r) {
  switch (r) {
    case Rule::CremonaIso:
      return "CremonaIso";
    case Rule::DegreeDrop:
      return "DegreeDrop";
    case Rule::MergeEmpty:
      return "MergeEmpty";
    case Rule::ReduceFull:
      return "ReduceFull";
    case Rule::ClampNonpositive:
      return "ClampNonpositive";
    case Rule::Contradiction:
      return "Contradiction";
    case Rule::Axiom:
      return "Axiom";
  }
  return "?";
}

Rule rule_from_string(std::string_view name) {
  for (Rule r : {Rule::CremonaIso, Rule::DegreeDrop, Rule::MergeEmpty, Rule::ReduceFull, Rule::ClampNonpositive,
                 Rule::Contradiction, Rule::Axiom}) {
    if (name == to_string(r)) return r;
  }
  throw std::invalid_argument("unknown rule '" + std::string(name) + "'");
}

std::vector<AxiomCitation> axiom_candidates(int dimension, std::uint64_t points) {
  const Integer n = dimension;
  std::vector<AxiomCitation> out;
  std::uint64_t k = integer_root(points, dimension);
  Integer pw = 1;
  for (int i = 0; i < dimension; ++i) pw *= k;
  if (k >= 2 && pw == points) out.push_back({"evain", points, Rational(k)});
  const auto N = static_cast<std::uint64_t>(dimension);
  if (points == N + 1) out.push_back({"small-count", points, Rational(n + 1, n)});
  if (points == N + 2) out.push_back({"small-count", points, Rational(n + 2, n)});
  if (points == N + 3) {
    Rational b = dimension % 2 == 0 ? Rational(n + 2, n)
                                    : Rational(1) + Rational(2, n) + Rational(2, n * n * n + 2 * n * n - n);
    out.push_back({"small-count", points, b});
  }
  return out;
}

std::optional<AxiomCitation> known_axiom(int dimension, std::uint64_t points) {
  std::optional<AxiomCitation> best;
  for (auto& c : axiom_candidates(dimension, points)) {
    if (!best || c.bound > best->bound) best = std::move(c);
  }
  return best;
}

AffineValue cremona_k(const FatPointSystem& sys, const Pivot& pivot) {
  const auto n = static_cast<std::size_t>(sys.dimension());
  if (sys.point_count() < n + 1) throw std::invalid_argument("system has fewer than N+1 points");
  if (pivot.size() != n + 1) throw std::invalid_argument("pivot must select exactly N+1 points");
  validate_pivot(sys, pivot);
  AffineValue k = Integer(sys.dimension() - 1) * sys.degree();
  for (auto idx : pivot) k -= sys.runs()[idx].value;
  return k;
}

FatPointSystem shift_points(const FatPointSystem& sys, const Pivot& pivot, const AffineValue& k) {
  validate_pivot(sys, pivot);
  std::vector<std::uint64_t> used(sys.runs().size(), 0);
  for (auto idx : pivot) ++used[idx];
  std::vector<MultiplicityRun> runs;
  for (std::size_t i = 0; i < sys.runs().size(); ++i) {
    const auto& r = sys.runs()[i];
    if (used[i] > 0) runs.push_back({r.value + k, used[i]});
    if (r.count > used[i]) runs.push_back({r.value, r.count - used[i]});
  }
  return FatPointSystem(sys.dimension(), sys.degree() + k, std::move(runs));
}

FatPointSystem cremona_step(const FatPointSystem& sys, const Pivot& pivot) {
  return *cremona_kernel(sys, pivot).output;
}

FatPointSystem degree_drop_step(const FatPointSystem& sys) {
  return *degree_drop_kernel(sys, sys.leading_points(static_cast<std::uint64_t>(sys.dimension()))).output;
}

FatPointSystem clamp_nonpositive(const FatPointSystem& sys) {
  if (!needs_clamp(sys)) return sys;
  return *clamp_kernel(sys).output;
}

ReduceFullResult reduce_full(const FatPointSystem& sys, const Pivot& pivot) {
  StepOutcome out = reduce_full_kernel(sys, pivot);
  return {clamp_nonpositive(*out.output), *out.k, eventually_negative(*out.k)};
}

ReduceFullResult reduce_full(const FatPointSystem& sys) {
  return reduce_full(sys, sys.leading_points(static_cast<std::uint64_t>(sys.dimension()) + 1));
}

Certificate merge_empty(const Certificate& lower, const Certificate& upper) {
  if (auto v = verify_certificate(lower); !v) throw std::invalid_argument("merge: first certificate fails: " + v.reason);
  if (auto v = verify_certificate(upper); !v)
    throw std::invalid_argument("merge: second certificate fails: " + v.reason);
  FatPointSystem claim = merged_claim(lower.claim, upper.claim);
  ReductionStep step{.rule = Rule::MergeEmpty, .input = claim, .refs = {0, 1}};
  return Certificate{.claim = claim,
                     .steps = {std::move(step)},
                     .premises = {lower, upper},
                     .m0 = max_of(lower.m0, upper.m0)};
}

Certificate axiom_certificate(const FatPointSystem& claim) {
  if (claim.runs().size() != 1) throw PreconditionError("axiom claim must have a single multiplicity run");
  auto cite = known_axiom(claim.dimension(), claim.runs()[0].count);
  if (!cite) throw PreconditionError("no known bound for " + std::to_string(claim.runs()[0].count) + " points");
  Integer thr = axiom_threshold(claim, *cite);
  ReductionStep step{.rule = Rule::Axiom, .input = claim, .axiom = cite, .threshold = thr};
  return Certificate{.claim = claim, .steps = {std::move(step)}, .premises = {}, .m0 = thr};
}

ProveResult prove_empty(const FatPointSystem& sys, const Strategy& strategy) {
  ProveResult result;
  std::vector<ReductionStep>& steps = result.attempted;
  FatPointSystem current = sys;
  const auto n = static_cast<std::uint64_t>(sys.dimension());

  auto push = [&](Rule rule, const Pivot& pivot, StepOutcome out) {
    steps.push_back(ReductionStep{.rule = rule,
                                  .input = current,
                                  .pivot = pivot,
                                  .k = out.k,
                                  .output = out.output,
                                  .threshold = out.threshold});
    current = *out.output;
  };
  auto clamp_if_needed = [&] {
    if (needs_clamp(current)) push(Rule::ClampNonpositive, {}, clamp_kernel(current));
  };
  auto finish = [&]() -> bool {
    auto witness = find_contradiction(current);
    if (!witness) return false;
    steps.push_back(ReductionStep{
        .rule = Rule::Contradiction, .input = current, .pivot = witness->first, .threshold = witness->second});
    Integer m0 = 1;
    for (const auto& s : steps) m0 = max_of(m0, s.threshold);
    result.certificate = Certificate{.claim = sys, .steps = steps, .premises = {}, .m0 = m0};
    return true;
  };

  try {
    if (strategy.kind == Strategy::Kind::Scripted) {
      for (const auto& entry : strategy.script) {
        clamp_if_needed();
        switch (entry.rule) {
          case Rule::ReduceFull:
            push(Rule::ReduceFull, entry.pivot, reduce_full_kernel(current, entry.pivot));
            break;
          case Rule::CremonaIso:
            push(Rule::CremonaIso, entry.pivot, cremona_kernel(current, entry.pivot));
            break;
          case Rule::DegreeDrop:
            push(Rule::DegreeDrop, entry.pivot, degree_drop_kernel(current, entry.pivot));
            break;
          default:
            throw std::invalid_argument(std::string("rule not allowed in a script: ") + to_string(entry.rule));
        }
      }
      clamp_if_needed();
      if (!finish()) result.failure = "script ended without a contradiction at " + current.str();
      return result;
    }

    std::size_t reductions = 0;
    while (true) {
      clamp_if_needed();
      if (finish()) return result;
      if (reductions >= strategy.budget) {
        result.failure = "step budget exhausted at " + current.str();
        return result;
      }
      if (current.point_count() < n + 1) {
        result.failure = "fewer than N+1 points left at " + current.str();
        return result;
      }
      Pivot pivot = current.leading_points(n + 1);
      StepOutcome out = reduce_full_kernel(current, pivot);
      if (!eventually_negative(*out.k)) {
        result.failure = "k = " + out.k->str() + " is not eventually negative at " + current.str();
        return result;
      }
      push(Rule::ReduceFull, pivot, std::move(out));
      ++reductions;
    }
  } catch (const std::invalid_argument& e) {
    // Rule preconditions and malformed script pivots both end the search.
    result.failure = e.what();
    return result;
  }
}

VerifyResult verify_certificate(const Certificate& cert) {
  const auto& steps = cert.steps;
  if (steps.empty()) return bad(0, "certificate has no steps");
  FatPointSystem current = cert.claim;
  Integer m0 = 1;
  const auto n = static_cast<std::size_t>(cert.claim.dimension());

  for (std::size_t i = 0; i < steps.size(); ++i) {
    const ReductionStep& step = steps[i];
    const bool last = i + 1 == steps.size();
    if (!(step.input == current)) return bad(i, "input does not follow from the previous step");
    try {
      StepOutcome expect;
      switch (step.rule) {
        case Rule::CremonaIso:
          expect = cremona_kernel(current, step.pivot);
          break;
        case Rule::ReduceFull:
          expect = reduce_full_kernel(current, step.pivot);
          break;
        case Rule::DegreeDrop:
          if (step.pivot.size() != n) return bad(i, "degree drop needs N points");
          expect = degree_drop_kernel(current, step.pivot);
          break;
        case Rule::ClampNonpositive:
          expect = clamp_kernel(current);
          break;
        case Rule::Contradiction: {
          if (!last) return bad(i, "contradiction must be the final step");
          auto thr = contradiction_threshold(current, step.pivot);
          if (!thr) return bad(i, "witness does not exceed the degree eventually");
          expect.threshold = *thr;
          break;
        }
        case Rule::MergeEmpty: {
          if (steps.size() != 1) return bad(i, "a merge must be the only step");
          if (step.refs.size() != 2) return bad(i, "a merge needs two premise references");
          for (auto ref : step.refs) {
            if (ref >= cert.premises.size()) return bad(i, "premise reference out of range");
          }
          if (step.refs[0] == step.refs[1]) return bad(i, "a merge needs two distinct premises");
          const Certificate& lower = cert.premises[step.refs[0]];
          const Certificate& upper = cert.premises[step.refs[1]];
          for (auto ref : step.refs) {
            if (auto v = verify_certificate(cert.premises[ref]); !v) {
              std::ostringstream os;
              os << "premise " << ref << " fails at step " << v.failing_step << ": " << v.reason;
              return bad(i, os.str());
            }
          }
          if (!(merged_claim(lower.claim, upper.claim) == cert.claim))
            return bad(i, "merged premises do not give the claim");
          m0 = max_of(m0, max_of(lower.m0, upper.m0));
          break;
        }
        case Rule::Axiom:
          if (steps.size() != 1) return bad(i, "an axiom must be the only step");
          if (!step.axiom) return bad(i, "axiom step without citation");
          expect.threshold = axiom_threshold(current, *step.axiom);
          break;
      }
      if (step.k != expect.k) return bad(i, "k does not replay");
      if (step.output != expect.output) return bad(i, "output does not replay");
      if (step.threshold != expect.threshold) {
        return bad(i, "threshold " + step.threshold.str() + " differs from replayed " + expect.threshold.str());
      }
      if (step.rule != Rule::MergeEmpty && !step.refs.empty()) return bad(i, "unexpected premise references");
      if (step.rule != Rule::Axiom && step.axiom) return bad(i, "unexpected axiom citation");
    } catch (const std::invalid_argument& e) {
      return bad(i, e.what());
    }
    m0 = max_of(m0, step.threshold);
    if (step.output) current = *step.output;
  }

  Rule final_rule = steps.back().rule;
  if (final_rule != Rule::Contradiction && final_rule != Rule::MergeEmpty && final_rule != Rule::Axiom)
    return bad(steps.size(), "certificate does not end in a verdict");
  if (cert.m0 != m0) return bad(steps.size(), "m0 " + cert.m0.str() + " differs from replayed " + m0.str());
  return {};
}

}  // namespace fatpoint
