#include "fatpoint/catalogue.hpp"

#include <boost/integer/common_factor.hpp>

#include <stdexcept>

namespace fatpoint {

namespace {

AffineValue lin(std::int64_t slope, std::int64_t intercept = 0) { return AffineValue(slope, intercept); }

FatPointSystem sys(int n, AffineValue degree, std::vector<MultiplicityRun> runs) {
  return FatPointSystem(n, std::move(degree), std::move(runs));
}

Certificate greedy(const FatPointSystem& claim) {
  ProveResult r = prove_empty(claim);
  if (!r.ok()) throw std::logic_error("catalogue: greedy search failed for " + claim.str() + ": " + r.failure);
  return *r.certificate;
}

Certificate scripted(const FatPointSystem& claim, std::vector<ScriptEntry> script) {
  ProveResult r = prove_empty(claim, Strategy::scripted(std::move(script)));
  if (!r.ok()) throw std::logic_error("catalogue: script failed for " + claim.str() + ": " + r.failure);
  return *r.certificate;
}

void require_even(int n) {
  if (n < 6 || n % 2 != 0) throw std::invalid_argument("N must be even and at least 6");
}

void require_at_least_5(int n) {
  if (n < 5) throw std::invalid_argument("N must be at least 5");
}

CatalogueEntry entry(std::string id, std::string description, Certificate cert) {
  if (auto v = verify_certificate(cert); !v) throw std::logic_error("catalogue: " + id + " fails: " + v.reason);
  auto fact = certified_fact(cert);
  if (!fact) throw std::logic_error("catalogue: " + id + " does not state a Waldschmidt bound");
  return {std::move(id), std::move(description), std::move(cert), *fact};
}

// 36 points of multiplicity 25m in P^4 under degree 51m-1, assembled from a
// seven-point reduction and three merges.
Certificate p4_thirty_six() {
  Certificate seven = greedy(sys(4, lin(51, -1), {{lin(25), 4}, {lin(50), 1}, {lin(40), 2}}));
  Certificate eight = greedy(sys(4, lin(40, -1), {{lin(25), 8}}));
  Certificate sixteen = axiom_certificate(sys(4, lin(50, -1), {{lin(25), 16}}));
  Certificate step = merge_empty(eight, seven);
  step = merge_empty(eight, step);
  return merge_empty(sixteen, step);
}

// Eight points of multiplicity m in P^2 under degree 2m-1, by merging the
// four-point bound into two double points.
Certificate p2_eight_merged() {
  Certificate four = axiom_certificate(sys(2, lin(2, -1), {{lin(1), 4}}));
  Certificate doubles = greedy(sys(2, lin(2, -1), {{lin(2), 2}}));
  Certificate step = merge_empty(four, doubles);
  return merge_empty(four, step);
}

}  // namespace

std::uint64_t CertifiedFact::min_points() const {
  return doubled * (std::uint64_t{1} << dimension) + simple;
}

std::optional<CertifiedFact> certified_fact(const Certificate& cert) {
  const FatPointSystem& claim = cert.claim;
  if (claim.degree().slope <= 0 || claim.runs().empty()) return std::nullopt;
  Integer g = 0;
  for (const auto& r : claim.runs()) {
    if (r.value.intercept != 0 || r.value.slope <= 0) return std::nullopt;
    g = boost::integer::gcd(g, r.value.slope);
  }
  CertifiedFact fact{.dimension = claim.dimension()};
  for (const auto& r : claim.runs()) {
    Integer w = r.value.slope / g;
    if (w == 1) {
      fact.simple += r.count;
    } else if (w == 2) {
      fact.doubled += r.count;
    } else {
      return std::nullopt;
    }
  }
  // Only g = slope of the weight-one points matters; when every point is
  // doubled the common factor already absorbed the weight.
  fact.bound = Rational(claim.degree().slope, g);
  return fact;
}

Rational even_n_plus_4_bound(int n) {
  require_even(n);
  return Rational((n + 2) * (2 * n - 1) + 2, n * (2 * n - 1));
}

Certificate even_n_plus_4_certificate(int n) {
  require_even(n);
  const std::int64_t N = n;
  const AffineValue q1 = lin(N * (2 * N - 1) / 2);
  const AffineValue p1 = lin((N + 2) * (2 * N - 1) / 2 + 1, -1);
  // After the first shift the three untouched points (q1) lead, followed by
  // the N+1 shifted ones; the second shift takes two of the former.
  Pivot first(static_cast<std::size_t>(N + 1), 0);
  Pivot second{0, 0};
  second.insert(second.end(), static_cast<std::size_t>(N - 1), 1);
  return scripted(sys(n, p1, {{q1, static_cast<std::uint64_t>(N + 4)}}),
                  {{Rule::ReduceFull, first}, {Rule::ReduceFull, second}});
}

int binomial_plus_one_a(int n) {
  require_at_least_5(n);
  const std::int64_t N = n;
  Integer a;
  if (n % 2 == 1) {
    a = ceil_div(N * N - 1, 2 * (N - 2));
    if (a < (N + 1) / 2) a = (N + 1) / 2;
  } else {
    a = ceil_div(N + (N - 1) * (N / 2 + 1), N / 2 - 1);
    if (a < N) a = N;
  }
  return static_cast<int>(a);
}

Certificate binomial_plus_one_core_certificate(int n) {
  require_at_least_5(n);
  const std::int64_t N = n, a = binomial_plus_one_a(n);
  const std::uint64_t x = n % 2 ? N + 3 : 3 * N / 2 + 4;
  const std::uint64_t y = n % 2 ? (N - 1) / 2 : (N - 2) / 2;
  return greedy(sys(n, lin((N + 3) * a + 1, -1), {{lin(N * a), x}, {lin((N + 2) * a), y}}));
}

Certificate binomial_plus_one_certificate(int n) {
  const std::int64_t N = n, a = binomial_plus_one_a(n);
  Certificate cert = binomial_plus_one_core_certificate(n);
  Certificate block = axiom_certificate(sys(n, lin((N + 2) * a, -1), {{lin(N * a), static_cast<std::uint64_t>(N + 2)}}));
  const std::int64_t y = n % 2 ? (N - 1) / 2 : (N - 2) / 2;
  for (std::int64_t i = 0; i < y; ++i) cert = merge_empty(block, cert);
  return cert;
}

Rational binomial_plus_one_bound(int n) {
  const std::int64_t N = n, a = binomial_plus_one_a(n);
  return Rational((N + 3) * a + 1, N * a);
}

const std::vector<CatalogueEntry>& catalogue() {
  static const std::vector<CatalogueEntry> entries = [] {
    std::vector<CatalogueEntry> out;
    out.push_back(entry("p2-5", "five points in P^2: m^5 at degree 2m-1",
                        greedy(sys(2, lin(2, -1), {{lin(1), 5}}))));
    out.push_back(entry("p2-6", "six points in P^2: (5m)^6 at degree 12m-1",
                        greedy(sys(2, lin(12, -1), {{lin(5), 6}}))));
    out.push_back(entry("p2-8-merged", "eight points in P^2 from four-point blocks: m^8 at degree 2m-1",
                        p2_eight_merged()));
    out.push_back(entry("p3-5", "five points in P^3: (3m)^5 at degree 5m-1",
                        greedy(sys(3, lin(5, -1), {{lin(3), 5}}))));
    out.push_back(entry("p3-6", "six points in P^3: (7m)^6 at degree 12m-1",
                        greedy(sys(3, lin(12, -1), {{lin(7), 6}}))));
    out.push_back(entry("p4-8", "eight points in P^4: (5m)^8 at degree 8m-1",
                        greedy(sys(4, lin(8, -1), {{lin(5), 8}}))));
    out.push_back(entry("p4-2x4-1x7", "P^4: (20m)^4, (10m)^7 at degree 23m-1",
                        greedy(sys(4, lin(23, -1), {{lin(20), 4}, {lin(10), 7}}))));
    out.push_back(entry("p4-36", "36 points in P^4: (25m)^36 at degree 51m-1", p4_thirty_six()));
    out.push_back(entry("p5-2x3-1x31", "P^5: (20m)^3, (10m)^31 at degree 21m-1",
                        greedy(sys(5, lin(21, -1), {{lin(20), 3}, {lin(10), 31}}))));
    for (int n : {6, 8, 10}) {
      out.push_back(entry("p" + std::to_string(n) + "-" + std::to_string(n + 4),
                          std::to_string(n + 4) + " points in P^" + std::to_string(n) + " (scripted pivots)",
                          even_n_plus_4_certificate(n)));
    }
    for (int n = 5; n <= 9; ++n) {
      std::int64_t s = static_cast<std::int64_t>(binomial(n + 2, n)) + 1;
      out.push_back(entry("p" + std::to_string(n) + "-" + std::to_string(s),
                          std::to_string(s) + " points in P^" + std::to_string(n) + " with a = " +
                              std::to_string(binomial_plus_one_a(n)),
                          binomial_plus_one_certificate(n)));
    }
    return out;
  }();
  return entries;
}

const CatalogueEntry& catalogue_entry(const std::string& id) {
  for (const auto& e : catalogue()) {
    if (e.id == id) return e;
  }
  throw std::out_of_range("no catalogue entry '" + id + "'");
}

}  // namespace fatpoint
