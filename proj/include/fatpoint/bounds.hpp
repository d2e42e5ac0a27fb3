#pragma once

#include "fatpoint/catalogue.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fatpoint {

// One derivation node. The node bounds the Waldschmidt constant of `points`
// simple points plus `doubled` double points in P^dimension.
//
// rule is one of
//   trivial        alpha-hat >= 1 for one point
//   evain          k^N points, bound k
//   small-count    N+1, N+2 or N+3 points
//   certified      read off a catalogue certificate (may carry doubled points)
//   block-to-double  2^N simple points replace each double point
//   doubling       alpha-hat(b * 2^(Nk)) >= 2^k alpha-hat(b)
//   monotone       more points never lower the constant
//   decomposition  Waldschmidt decomposition over bounds in P^(N-1); the
//                  premises are generic-point bounds used for very general points
struct ProofTree {
  std::string rule;
  int dimension = 2;
  std::uint64_t points = 1;
  std::uint64_t doubled = 0;
  Rational bound;
  std::vector<std::pair<std::string, Rational>> params;
  std::vector<std::shared_ptr<const ProofTree>> premises;
  std::string certificate;  // catalogue id for "certified"

  const Rational* param(const std::string& name) const;
};

using ProofPtr = std::shared_ptr<const ProofTree>;

struct BoundFact {
  int dimension = 2;
  std::uint64_t points = 1;
  Rational bound;
  ProofPtr derivation;
};

// Re-derives the bound of every node from its rule, parameters and premises.
// Throws std::logic_error naming the first node that does not replay.
Rational replay_proof(const ProofTree& tree);

// Memoizing rule engine. Not thread-safe; use one engine per thread. The
// catalogue it reads is immutable and shared.
class BoundEngine {
 public:
  BoundEngine();

  // The largest bound any rule combination yields for s generic points.
  BoundFact lower_bound(int dimension, std::uint64_t s);

 private:
  ProofPtr derive(int dimension, std::uint64_t s);

  const std::vector<CatalogueEntry>& catalogue_;
  std::map<std::pair<int, std::uint64_t>, ProofPtr> memo_;
};

// Uses a per-thread engine.
BoundFact waldschmidt_lower_bound(int dimension, std::uint64_t s);

// Waldschmidt decomposition: from alpha-hat(P^(N-1), r_j) >= a_j,
// alpha-hat(P^N, r_1 + ... + r_(k+1)) >= (1 - sum_{j<=k} 1/a_j) a_(k+1) + k.
// Requires k+1 facts, k <= a_j <= k+1 for j <= k, a_1 > k and a_(k+1) <= k+1;
// throws std::invalid_argument naming the violated hypothesis.
Rational decomposition_bound(int dimension, const std::vector<std::pair<std::uint64_t, Rational>>& facts, int k);

// Least d with C(d+N, N) > s.
std::int64_t alpha_generic(int dimension, std::uint64_t s);
// l+1 where C(N+l-1, N) < s <= C(N+l, N).
std::int64_t regularity_generic(int dimension, std::uint64_t s);

enum class Check { HarbourneHuneke, Chudnovsky };

const char* to_string(Check c);

struct CheckReport {
  Check check = Check::HarbourneHuneke;
  int dimension = 2;
  std::uint64_t points = 1;
  Rational bound;
  std::int64_t alpha = 0;
  std::int64_t reg = 0;
  Rational rhs;
  bool verdict = false;
  std::optional<std::int64_t> r_threshold;  // HH with a true verdict only
  ProofPtr proof;
};

// bound > (reg+N-1)/N, strictly.
CheckReport hh_check(int dimension, std::uint64_t s);
// bound >= (alpha+N-1)/N.
CheckReport chudnovsky_check(int dimension, std::uint64_t s);
CheckReport run_check(Check check, int dimension, std::uint64_t s);

// Least r >= 2 with (Nr - N) * bound >= r * (reg + N - 1). Throws
// std::domain_error when N * bound <= reg + N - 1.
std::int64_t containment_threshold(int dimension, const Rational& bound, std::int64_t reg);
std::int64_t containment_threshold(int dimension, std::uint64_t s);

// Checks for every s in [from, to]; rows in ascending s. Work is split across
// `threads` workers (0 = hardware concurrency), each with its own engine.
std::vector<CheckReport> sweep(Check check, int dimension, std::uint64_t from, std::uint64_t to,
                               unsigned threads = 0);

nlohmann::json proof_to_json(const ProofTree& tree);
nlohmann::json bound_to_json(const BoundFact& fact);
nlohmann::json report_to_json(const CheckReport& report);

}  // namespace fatpoint
