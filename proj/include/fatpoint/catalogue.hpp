#pragma once

#include "fatpoint/reduction.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fatpoint {

// What an emptiness certificate says about Waldschmidt constants: the claim
// I((2gm)^b, (gm)^c)_{pm+i} = 0 for all large m gives
// alpha-hat(2^b, 1^c) >= p/g, hence alpha-hat(s) >= p/g for s >= b*2^N + c.
struct CertifiedFact {
  int dimension = 2;
  std::uint64_t doubled = 0;  // b
  std::uint64_t simple = 0;   // c
  Rational bound;

  std::uint64_t min_points() const;
};

// Reads a fact off a certificate claim. Requires multiplicities g*m and 2g*m
// (no intercept) and a degree with positive slope; nullopt otherwise.
std::optional<CertifiedFact> certified_fact(const Certificate& cert);

struct CatalogueEntry {
  std::string id;
  std::string description;
  Certificate certificate;
  CertifiedFact fact;
};

// Builds the shipped certificates on first use; verified before they are
// returned. Safe to call from several threads.
const std::vector<CatalogueEntry>& catalogue();
const CatalogueEntry& catalogue_entry(const std::string& id);

// N+4 points in P^N, N even >= 6: the two-step reduction whose second pivot
// keeps one of the three untouched points. Bound ((N+2)(2N-1)+2)/(N(2N-1)).
Certificate even_n_plus_4_certificate(int n);
Rational even_n_plus_4_bound(int n);

// C(N+2, N)+1 points in P^N, N >= 5. The auxiliary integer a is taken at its
// least admissible value; see binomial_plus_one_a.
int binomial_plus_one_a(int n);
Certificate binomial_plus_one_core_certificate(int n);  // before the merges
Certificate binomial_plus_one_certificate(int n);
Rational binomial_plus_one_bound(int n);

}  // namespace fatpoint
