#include "fatpoint/bounds.hpp"

#include "fatpoint/serialization.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace fatpoint {

namespace {

using Json = nlohmann::json;

Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }

ProofPtr node(std::string rule, int dimension, std::uint64_t points, std::uint64_t doubled, Rational bound,
              std::vector<std::pair<std::string, Rational>> params = {}, std::vector<ProofPtr> premises = {},
              std::string certificate = {}) {
  auto t = std::make_shared<ProofTree>();
  t->rule = std::move(rule);
  t->dimension = dimension;
  t->points = points;
  t->doubled = doubled;
  t->bound = std::move(bound);
  t->params = std::move(params);
  t->premises = std::move(premises);
  t->certificate = std::move(certificate);
  return t;
}

ProofPtr at_least(ProofPtr base, std::uint64_t s) {
  if (base->points == s && base->doubled == 0) return base;
  int n = base->dimension;
  Rational b = base->bound;
  return node("monotone", n, s, 0, std::move(b), {}, {std::move(base)});
}

// 2^(N*k) as an Integer, so the caller can compare without overflow.
Integer block(int dimension, std::int64_t k) { return Integer(1) << static_cast<unsigned>(dimension * k); }

std::optional<Rational> small_count_bound(int dimension, std::uint64_t points) {
  for (const auto& c : axiom_candidates(dimension, points)) {
    if (c.source == "small-count") return c.bound;
  }
  return std::nullopt;
}

[[noreturn]] void bad_node(const ProofTree& t, const std::string& why) {
  throw std::logic_error("proof node '" + t.rule + "' for " + std::to_string(t.points) + " points in P^" +
                         std::to_string(t.dimension) + ": " + why);
}

const Rational& need_param(const ProofTree& t, const std::string& name) {
  const Rational* p = t.param(name);
  if (!p) bad_node(t, "missing parameter " + name);
  return *p;
}

Integer whole(const ProofTree& t, const Rational& r) {
  if (denominator(r) != 1) bad_node(t, "parameter is not an integer");
  return numerator(r);
}

}  // namespace

const Rational* ProofTree::param(const std::string& name) const {
  for (const auto& [k, v] : params) {
    if (k == name) return &v;
  }
  return nullptr;
}

Rational replay_proof(const ProofTree& t) {
  const int n = t.dimension;
  std::vector<Rational> below;
  for (const auto& p : t.premises) below.push_back(replay_proof(*p));
  auto premise_count = [&](std::size_t want) {
    if (t.premises.size() != want) bad_node(t, "expected " + std::to_string(want) + " premises");
  };
  auto simple_only = [&] {
    if (t.doubled != 0) bad_node(t, "rule does not apply to double points");
  };

  Rational expect;
  if (t.rule == "trivial") {
    premise_count(0);
    simple_only();
    if (t.points != 1) bad_node(t, "trivial bound is stated for one point");
    expect = 1;
  } else if (t.rule == "evain") {
    premise_count(0);
    simple_only();
    Integer k = whole(t, need_param(t, "k"));
    Integer pw = 1;
    for (int i = 0; i < n; ++i) pw *= k;
    if (k < 2 || pw != t.points) bad_node(t, "point count is not k^N with k >= 2");
    expect = Rational(k);
  } else if (t.rule == "small-count") {
    premise_count(0);
    simple_only();
    auto b = small_count_bound(n, t.points);
    if (!b) bad_node(t, "not N+1, N+2 or N+3 points");
    expect = *b;
  } else if (t.rule == "certified") {
    premise_count(0);
    const CatalogueEntry& e = catalogue_entry(t.certificate);
    if (auto v = verify_certificate(e.certificate); !v) bad_node(t, "certificate fails: " + v.reason);
    auto fact = certified_fact(e.certificate);
    if (!fact || fact->dimension != n || fact->doubled != t.doubled || fact->simple != t.points)
      bad_node(t, "certificate claim does not match the node");
    expect = fact->bound;
  } else if (t.rule == "block-to-double") {
    premise_count(1);
    simple_only();
    const ProofTree& p = *t.premises[0];
    if (p.dimension != n) bad_node(t, "premise in another dimension");
    Integer replaced = Integer(p.doubled) * block(n, 1) + p.points;
    if (replaced != t.points) bad_node(t, "point count does not match the replaced double points");
    expect = below[0];
  } else if (t.rule == "doubling") {
    premise_count(1);
    simple_only();
    const ProofTree& p = *t.premises[0];
    Integer k = whole(t, need_param(t, "k"));
    if (k < 1 || p.dimension != n || p.doubled != 0) bad_node(t, "bad premise or k");
    if (Integer(p.points) * block(n, static_cast<std::int64_t>(k)) != t.points)
      bad_node(t, "point count is not b * 2^(Nk)");
    expect = below[0] * Rational(Integer(1) << static_cast<unsigned>(k));
  } else if (t.rule == "monotone") {
    premise_count(1);
    simple_only();
    const ProofTree& p = *t.premises[0];
    if (p.dimension != n || p.doubled != 0 || p.points > t.points) bad_node(t, "premise has more points");
    expect = below[0];
  } else if (t.rule == "decomposition") {
    simple_only();
    Integer k = whole(t, need_param(t, "k"));
    if (k < 1 || t.premises.size() != static_cast<std::size_t>(k) + 1) bad_node(t, "needs k+1 premises");
    std::vector<std::pair<std::uint64_t, Rational>> facts;
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < t.premises.size(); ++j) {
      const ProofTree& p = *t.premises[j];
      const Rational& a = need_param(t, "a" + std::to_string(j + 1));
      if (p.dimension != n - 1 || p.doubled != 0) bad_node(t, "premise must be simple points in P^(N-1)");
      if (a > below[j]) bad_node(t, "a_j exceeds its premise");
      facts.emplace_back(p.points, a);
      total += p.points;
    }
    if (total != t.points) bad_node(t, "point counts do not add up");
    try {
      expect = decomposition_bound(n, facts, static_cast<int>(k));
    } catch (const std::invalid_argument& e) {
      bad_node(t, e.what());
    }
  } else {
    bad_node(t, "unknown rule");
  }
  if (expect != t.bound) bad_node(t, "stored bound does not replay");
  return expect;
}

BoundEngine::BoundEngine() : catalogue_(catalogue()) {}

BoundFact BoundEngine::lower_bound(int dimension, std::uint64_t s) {
  if (dimension < 2) throw std::invalid_argument("dimension must be at least 2");
  if (s < 1) throw std::invalid_argument("need at least one point");
  ProofPtr p = derive(dimension, s);
  return {dimension, s, p->bound, p};
}

ProofPtr BoundEngine::derive(int n, std::uint64_t s) {
  if (auto it = memo_.find({n, s}); it != memo_.end()) return it->second;

  ProofPtr best = at_least(node("trivial", n, 1, 0, 1), s);
  auto offer = [&](ProofPtr candidate) {
    if (candidate->bound > best->bound) best = at_least(std::move(candidate), s);
  };

  if (std::uint64_t k = integer_root(s, n); k >= 2) {
    Integer pw = 1;
    for (int i = 0; i < n; ++i) pw *= k;
    offer(node("evain", n, static_cast<std::uint64_t>(pw), 0, Rational(k), {{"k", Rational(k)}}));
  }

  for (std::uint64_t t = n + 1; t <= static_cast<std::uint64_t>(n) + 3 && t <= s; ++t) {
    offer(node("small-count", n, t, 0, *small_count_bound(n, t)));
  }

  for (const auto& e : catalogue_) {
    const CertifiedFact& f = e.fact;
    if (f.dimension != n || f.min_points() > s) continue;
    ProofPtr cert = node("certified", n, f.simple, f.doubled, f.bound,
                         {{"doubled", Rational(f.doubled)}, {"simple", Rational(f.simple)}}, {}, e.id);
    if (f.doubled > 0) cert = node("block-to-double", n, f.min_points(), 0, f.bound, {}, {cert});
    offer(cert);
  }

  for (std::int64_t k = 1; n * k < 64 && block(n, k) <= s; ++k) {
    std::uint64_t b = s >> (n * k);
    ProofPtr base = derive(n, b);
    offer(node("doubling", n, b << (n * k), 0, base->bound * Rational(Integer(1) << static_cast<unsigned>(k)),
               {{"k", Rational(k)}, {"base", Rational(b)}}, {base}));
  }

  if (n >= 3) {
    const int m = n - 1;
    for (std::int64_t ell = 1;; ++ell) {
      Integer total = binomial(n + ell, n) + 1;
      if (total > s) break;
      auto r1 = static_cast<std::uint64_t>(binomial(m + ell, m) + 1);
      auto r2 = static_cast<std::uint64_t>(binomial(m + ell, m + 1));
      ProofPtr p1 = derive(m, r1);
      ProofPtr p2 = derive(m, r2);
      Rational a1 = rmin(p1->bound, 2), a2 = rmin(p2->bound, 2);
      if (a1 <= 1) continue;
      Rational b = decomposition_bound(n, {{r1, a1}, {r2, a2}}, 1);
      offer(node("decomposition", n, r1 + r2, 0, b, {{"k", 1}, {"ell", Rational(ell)}, {"a1", a1}, {"a2", a2}},
                 {p1, p2}));
    }
  }

  memo_.emplace(std::make_pair(n, s), best);
  return best;
}

BoundFact waldschmidt_lower_bound(int dimension, std::uint64_t s) {
  thread_local BoundEngine engine;
  return engine.lower_bound(dimension, s);
}

Rational decomposition_bound(int dimension, const std::vector<std::pair<std::uint64_t, Rational>>& facts, int k) {
  if (dimension < 2) throw std::invalid_argument("decomposition needs N >= 2");
  if (k < 1) throw std::invalid_argument("decomposition needs k >= 1");
  if (facts.size() != static_cast<std::size_t>(k) + 1)
    throw std::invalid_argument("decomposition needs exactly k+1 facts");
  const Rational lo(k), hi(k + 1);
  Rational sum = 0;
  for (int j = 0; j < k; ++j) {
    const Rational& a = facts[j].second;
    if (a < lo || a > hi) throw std::invalid_argument("a_" + std::to_string(j + 1) + " outside [k, k+1]");
    sum += 1 / a;
  }
  if (!(facts[0].second > lo)) throw std::invalid_argument("a_1 must exceed k");
  if (facts[k].second > hi) throw std::invalid_argument("a_(k+1) must be at most k+1");
  for (const auto& f : facts) {
    if (f.first < 1) throw std::invalid_argument("every r_j must be positive");
  }
  return (1 - sum) * facts[k].second + k;
}

std::int64_t alpha_generic(int dimension, std::uint64_t s) {
  if (dimension < 2 || s < 1) throw std::invalid_argument("alpha_generic needs N >= 2 and s >= 1");
  std::int64_t d = 0;
  while (binomial(d + dimension, dimension) <= s) ++d;
  return d;
}

std::int64_t regularity_generic(int dimension, std::uint64_t s) {
  if (dimension < 2 || s < 1) throw std::invalid_argument("regularity_generic needs N >= 2 and s >= 1");
  std::int64_t ell = 0;
  while (binomial(dimension + ell, dimension) < s) ++ell;
  return ell + 1;
}

const char* to_string(Check c) { return c == Check::HarbourneHuneke ? "hh" : "chudnovsky"; }

CheckReport hh_check(int dimension, std::uint64_t s) { return run_check(Check::HarbourneHuneke, dimension, s); }

CheckReport chudnovsky_check(int dimension, std::uint64_t s) { return run_check(Check::Chudnovsky, dimension, s); }

namespace {

CheckReport check_with(BoundEngine& engine, Check check, int n, std::uint64_t s) {
  CheckReport r;
  r.check = check;
  r.dimension = n;
  r.points = s;
  BoundFact f = engine.lower_bound(n, s);
  r.bound = f.bound;
  r.proof = f.derivation;
  r.alpha = alpha_generic(n, s);
  r.reg = regularity_generic(n, s);
  if (check == Check::HarbourneHuneke) {
    r.rhs = Rational(r.reg + n - 1, n);
    r.verdict = r.bound > r.rhs;
    if (r.verdict) r.r_threshold = containment_threshold(n, r.bound, r.reg);
  } else {
    r.rhs = Rational(r.alpha + n - 1, n);
    r.verdict = r.bound >= r.rhs;
  }
  return r;
}

}  // namespace

CheckReport run_check(Check check, int dimension, std::uint64_t s) {
  thread_local BoundEngine engine;
  return check_with(engine, check, dimension, s);
}

std::int64_t containment_threshold(int dimension, const Rational& bound, std::int64_t reg) {
  const Rational nb = bound * dimension;
  const Rational big_r = reg + dimension - 1;
  if (nb <= big_r) throw std::domain_error("threshold undefined: N * bound does not exceed reg + N - 1");
  // r (NB - R) >= NB
  Rational q = nb / (nb - big_r);
  Integer r = ceil_div(numerator(q), denominator(q));
  return r < 2 ? 2 : to_int64(r);
}

std::int64_t containment_threshold(int dimension, std::uint64_t s) {
  BoundFact f = waldschmidt_lower_bound(dimension, s);
  return containment_threshold(dimension, f.bound, regularity_generic(dimension, s));
}

std::vector<CheckReport> sweep(Check check, int dimension, std::uint64_t from, std::uint64_t to, unsigned threads) {
  if (from > to) return {};
  if (from < 1) throw std::invalid_argument("sweep starts at s >= 1");
  const std::uint64_t count = to - from + 1;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  std::vector<CheckReport> rows(count);
  auto work = [&](unsigned id) {
    BoundEngine engine;
    for (std::uint64_t i = id; i < count; i += threads) rows[i] = check_with(engine, check, dimension, from + i);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& t : pool) t.join();
  }
  return rows;
}

Json proof_to_json(const ProofTree& t) {
  Json params = Json::object();
  for (const auto& [k, v] : t.params) params[k] = rational_to_json(v);
  Json premises = Json::array();
  for (const auto& p : t.premises) premises.push_back(proof_to_json(*p));
  Json j = {{"rule", t.rule},
            {"N", t.dimension},
            {"points", t.points},
            {"bound", rational_to_json(t.bound)},
            {"params", params},
            {"premises", premises}};
  if (t.doubled) j["doubled"] = t.doubled;
  if (!t.certificate.empty()) j["certificate"] = t.certificate;
  return j;
}

Json bound_to_json(const BoundFact& f) {
  return {{"N", f.dimension}, {"s", f.points}, {"bound", rational_to_json(f.bound)},
          {"proof_tree", proof_to_json(*f.derivation)}};
}

Json report_to_json(const CheckReport& r) {
  Json j = {{"check", to_string(r.check)},
            {"N", r.dimension},
            {"s", r.points},
            {"bound", rational_to_json(r.bound)},
            {"alpha", r.alpha},
            {"reg", r.reg},
            {"rhs", rational_to_json(r.rhs)},
            {"verdict", r.verdict},
            {"proof_tree", proof_to_json(*r.proof)}};
  if (r.r_threshold) j["r_threshold"] = *r.r_threshold;
  if (r.check == Check::HarbourneHuneke) {
    j["notes"] = {{"criterion", "(N r - N) * bound >= r (reg + N - 1)"},
                  {"exponent",
                   "the stable containment derived from this criterion carries m^(N r); the conjectured "
                   "statement carries m^(r (N - 1)). Only the numeric criterion is checked."}};
  } else {
    j["notes"] = {{"criterion", "bound >= (alpha + N - 1) / N"}};
  }
  return j;
}

}  // namespace fatpoint
