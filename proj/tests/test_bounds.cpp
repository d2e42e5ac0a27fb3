#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fatpoint/bounds.hpp"

#include <functional>

using namespace fatpoint;

namespace {

// Least r >= 2 satisfying the containment criterion, by direct search.
std::int64_t scan_threshold(int n, const Rational& bound, std::int64_t reg) {
  for (std::int64_t r = 2; r < 100000; ++r) {
    if (Rational(n * r - n) * bound >= Rational(r * (reg + n - 1))) return r;
  }
  return -1;
}

void for_each_node(const ProofTree& t, const std::function<void(const ProofTree&)>& f) {
  f(t);
  for (const auto& p : t.premises) for_each_node(*p, f);
}

}  // namespace

TEST_CASE("bounds at named instances") {
  CHECK(waldschmidt_lower_bound(4, 71).bound == Rational(23, 10));
  CHECK(waldschmidt_lower_bound(4, 16).bound == 2);
  CHECK(waldschmidt_lower_bound(4, 128).bound == Rational(16, 5));
  CHECK(waldschmidt_lower_bound(6, 462).bound == Rational(7, 3));
  CHECK(waldschmidt_lower_bound(4, 126).bound == 3);
  CHECK(waldschmidt_lower_bound(4, 36).bound == Rational(51, 25));
  CHECK(waldschmidt_lower_bound(5, 127).bound == Rational(21, 10));
  CHECK(waldschmidt_lower_bound(5, 126).bound == 2);
  CHECK(waldschmidt_lower_bound(3, 1).bound == 1);
  CHECK(waldschmidt_lower_bound(2, 4).bound == 2);
  for (int n = 2; n <= 8; ++n) CHECK(waldschmidt_lower_bound(n, std::uint64_t{1} << n).bound == 2);
}

TEST_CASE("derivation rules at named instances") {
  auto seventy_one = waldschmidt_lower_bound(4, 71).derivation;
  CHECK(seventy_one->rule == "block-to-double");
  CHECK(seventy_one->premises.at(0)->rule == "certified");
  CHECK(seventy_one->premises.at(0)->doubled == 4);
  CHECK(seventy_one->premises.at(0)->points == 7);
  CHECK(waldschmidt_lower_bound(4, 16).derivation->rule == "evain");
  CHECK(waldschmidt_lower_bound(4, 80).derivation->rule == "doubling");

  auto mono = waldschmidt_lower_bound(6, 462).derivation;
  CHECK(mono->rule == "monotone");
  CHECK(mono->premises.at(0)->rule == "doubling");
  CHECK(mono->premises.at(0)->points == 448);

  auto dec = waldschmidt_lower_bound(5, 22).derivation;
  CHECK(dec->rule == "decomposition");
  CHECK(dec->bound == Rational(7, 4));
  CHECK(dec->premises.at(0)->points == 16);
  CHECK(dec->premises.at(1)->points == 6);
}

TEST_CASE("generic alpha and regularity") {
  CHECK(alpha_generic(2, 5) == 2);
  CHECK(alpha_generic(2, 6) == 3);
  CHECK(alpha_generic(4, 71) == 5);
  CHECK(alpha_generic(4, 126) == 6);
  CHECK(alpha_generic(7, 1) == 1);
  CHECK(regularity_generic(4, 82) == 6);
  CHECK(regularity_generic(2, 5) == 3);
  CHECK(regularity_generic(2, 6) == 3);
  CHECK(regularity_generic(4, 16) == 4);
  CHECK(regularity_generic(4, 71) == 6);
  CHECK(regularity_generic(3, 1) == 1);
  CHECK_THROWS_AS(alpha_generic(1, 5), std::invalid_argument);
}

TEST_CASE("checks") {
  CheckReport hh = hh_check(4, 71);
  CHECK(hh.verdict);
  CHECK(hh.reg == 6);
  CHECK(hh.rhs == Rational(9, 4));
  CHECK(hh.r_threshold == 46);

  CheckReport tight = hh_check(4, 16);
  CHECK(tight.reg == 4);
  CHECK(tight.rhs == Rational(7, 4));
  CHECK(tight.verdict);
  CHECK(tight.r_threshold == 8);

  CheckReport ch = chudnovsky_check(4, 71);
  CHECK(ch.alpha == 5);
  CHECK(ch.rhs == 2);
  CHECK(ch.verdict);
  CHECK_FALSE(ch.r_threshold);

  CHECK(run_check(Check::HarbourneHuneke, 4, 71).bound == hh.bound);

  CHECK(hh_check(4, 36).verdict);
  CHECK(hh_check(4, 36).rhs == 2);
  CHECK(hh_check(5, 126).verdict);

  CheckReport big = chudnovsky_check(4, 126);
  CHECK(big.bound == 3);
  CHECK(big.alpha == 6);
  CHECK(big.rhs == Rational(9, 4));
  CHECK(big.verdict);
  for (int n = 2; n <= 9; ++n) {
    CheckReport r = chudnovsky_check(n, n + 2);
    CHECK(r.bound == Rational(n + 2, n));
    CHECK(r.verdict);
  }
  CHECK(std::string(to_string(Check::Chudnovsky)) == "chudnovsky");
}

TEST_CASE("containment threshold agrees with a direct scan") {
  for (int n = 2; n <= 6; ++n) {
    for (std::uint64_t s = n + 4; s <= 400; s += 7) {
      CheckReport r = hh_check(n, s);
      if (!r.verdict) continue;
      CAPTURE(n);
      CAPTURE(s);
      CHECK(*r.r_threshold == scan_threshold(n, r.bound, r.reg));
    }
  }
  CHECK(containment_threshold(4, 71) == 46);
  CHECK(containment_threshold(4, 16) == 8);
  CHECK(containment_threshold(2, Rational(100), 1) == 2);
  CHECK_THROWS_AS(containment_threshold(4, Rational(2), 5), std::domain_error);
}

TEST_CASE("bounds never decrease with more points") {
  for (int n = 2; n <= 6; ++n) {
    Rational prev = 0;
    for (std::uint64_t s = 1; s <= 300; ++s) {
      Rational b = waldschmidt_lower_bound(n, s).bound;
      CAPTURE(n);
      CAPTURE(s);
      CHECK(b >= prev);
      CHECK(b >= 1);
      prev = b;
    }
  }
}

TEST_CASE("bounds stay below the generic alpha") {
  // alpha-hat <= alpha(I), so a lower bound above it would be unsound.
  for (int n = 2; n <= 6; ++n) {
    for (std::uint64_t s = 1; s <= 500; ++s) CHECK(waldschmidt_lower_bound(n, s).bound <= alpha_generic(n, s));
  }
}

TEST_CASE("every derivation replays") {
  for (int n = 2; n <= 7; ++n) {
    for (std::uint64_t s = 1; s <= 600; s += 3) {
      BoundFact f = waldschmidt_lower_bound(n, s);
      CHECK(replay_proof(*f.derivation) == f.bound);
      for_each_node(*f.derivation, [&](const ProofTree& t) { CHECK(t.dimension >= 2); });
    }
  }
}

TEST_CASE("tampered derivations are rejected") {
  BoundFact f = waldschmidt_lower_bound(5, 22);
  ProofTree t = *f.derivation;
  t.bound += Rational(1, 100);
  CHECK_THROWS_AS(replay_proof(t), std::logic_error);

  t = *f.derivation;
  for (auto& [name, value] : t.params) {
    if (name == "a1") value += 1;
  }
  CHECK_THROWS_AS(replay_proof(t), std::logic_error);

  t = *f.derivation;
  t.points = 23;  // no longer r_1 + r_2
  CHECK_THROWS_AS(replay_proof(t), std::logic_error);

  ProofTree c = *waldschmidt_lower_bound(4, 71).derivation->premises.at(0);
  c.certificate = "p4-36";
  CHECK_THROWS_AS(replay_proof(c), std::logic_error);
  c.certificate = "no-such-entry";
  CHECK_THROWS(replay_proof(c));

  ProofTree m = *waldschmidt_lower_bound(6, 462).derivation;
  m.points = 400;  // fewer points than the premise
  CHECK_THROWS_AS(replay_proof(m), std::logic_error);
}

TEST_CASE("even N+4 facts beat the N+2 bound") {
  for (int n : {6, 8, 10}) {
    BoundFact f = waldschmidt_lower_bound(n, n + 4);
    CAPTURE(n);
    CHECK(f.bound == even_n_plus_4_bound(n));
    CHECK(f.bound > Rational(n + 2, n));
  }
  CHECK(even_n_plus_4_bound(6) == Rational(15, 11));
}

TEST_CASE("decomposition hypotheses") {
  using F = std::vector<std::pair<std::uint64_t, Rational>>;
  CHECK(decomposition_bound(6, F{{22, Rational(2)}, {21, Rational(2)}}, 1) == Rational(2));
  CHECK(decomposition_bound(3, F{{5, Rational(3, 2)}, {4, Rational(2)}}, 1) == Rational(5, 3));
  // the cross-dimension step: a_1 = (N+l+1)/N, a_2 = (N+l)/N
  for (int n = 3; n <= 7; ++n) {
    for (int l = 1; l < n; ++l) {
      Rational got = decomposition_bound(n + 1, F{{1, Rational(n + l + 1, n)}, {1, Rational(n + l, n)}}, 1);
      CHECK(got == Rational((l + 1) * (n + l), (n + l + 1) * n) + 1);
      CHECK(got > 1 + Rational(l + 1, n + 1));
    }
  }
  CHECK_THROWS_AS(decomposition_bound(3, F{{5, Rational(1)}, {4, Rational(2)}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(decomposition_bound(3, F{{5, Rational(3, 2)}, {4, Rational(3)}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(decomposition_bound(3, F{{5, Rational(3, 2)}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(decomposition_bound(3, F{{5, Rational(5, 2)}, {4, Rational(2)}}, 1), std::invalid_argument);
}

TEST_CASE("sweeps are independent of the thread count") {
  auto one = sweep(Check::HarbourneHuneke, 5, 9, 140, 1);
  auto three = sweep(Check::HarbourneHuneke, 5, 9, 140, 3);
  REQUIRE(one.size() == 132);
  REQUIRE(three.size() == one.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].points == 9 + i);
    CHECK(one[i].bound == three[i].bound);
    CHECK(one[i].verdict == three[i].verdict);
  }
  CHECK(sweep(Check::Chudnovsky, 3, 5, 4).empty());
}

TEST_CASE("known verdict ranges") {
  for (int n = 4; n <= 6; ++n) {
    for (const auto& r : sweep(Check::HarbourneHuneke, n, n + 4, 400)) CHECK(r.verdict);
    for (const auto& r : sweep(Check::Chudnovsky, n, 1, 400)) CHECK(r.verdict);
  }
}

TEST_CASE("report json") {
  nlohmann::json j = report_to_json(hh_check(4, 71));
  CHECK(j["check"] == "hh");
  CHECK(j["bound"]["num"] == 23);
  CHECK(j["bound"]["den"] == 10);
  CHECK(j["r_threshold"] == 46);
  CHECK(j["verdict"] == true);
  CHECK(j["proof_tree"]["rule"] == "block-to-double");
  CHECK(j["proof_tree"]["premises"][0]["certificate"] == "p4-2x4-1x7");
  CHECK(j["notes"].contains("exponent"));

  nlohmann::json c = report_to_json(chudnovsky_check(3, 7));
  CHECK_FALSE(c.contains("r_threshold"));
  CHECK(c["check"] == "chudnovsky");

  nlohmann::json b = bound_to_json(waldschmidt_lower_bound(5, 22));
  CHECK(b["proof_tree"]["params"]["a1"]["num"] == 2);
}
