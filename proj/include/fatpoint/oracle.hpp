#pragma once

#include "fatpoint/affine.hpp"

#include <json.hpp>

#include <cstdint>
#include <vector>

namespace fatpoint {

// Monte Carlo dimension oracle. Points are drawn uniformly from the affine
// chart x_N = 1 of P^N over F_p.
struct OracleConfig {
  std::uint64_t prime = 2147483647;  // 2^31 - 1
  unsigned trials = 3;
  std::uint64_t seed = 20240517;
};

struct OracleReport {
  int dimension = 2;
  std::int64_t degree = 0;
  std::vector<std::int64_t> multiplicities;
  std::int64_t value = 0;            // min over trials
  std::vector<std::int64_t> dims;    // one per trial actually run
  OracleConfig config;
};

// p must be prime, below 2^32, and larger than the degree and every
// multiplicity. Throws std::invalid_argument otherwise, and std::runtime_error
// if distinct points cannot be drawn.
void validate_oracle_config(const OracleConfig& config, std::int64_t degree,
                            const std::vector<std::int64_t>& multiplicities);

// Number of conditions: sum over points of C(m_i - 1 + N, N).
std::uint64_t condition_count(int dimension, const std::vector<std::int64_t>& multiplicities);

// dim of the space of degree-d forms vanishing to order m_i at random points,
// as C(d+N, N) minus the rank of the Hasse-derivative conditions.
OracleReport linear_system_dim(int dimension, std::int64_t degree, const std::vector<std::int64_t>& multiplicities,
                               const OracleConfig& config = {});

// Least d with linear_system_dim(N, d, m^s) > 0.
std::int64_t alpha_symbolic_power(int dimension, std::uint64_t s, std::int64_t m, const OracleConfig& config = {});

// min over 1 <= m <= m_max of alpha_symbolic_power(N, s, m) / m.
Rational waldschmidt_upper_estimate(int dimension, std::uint64_t s, std::int64_t m_max,
                                    const OracleConfig& config = {});

// Rank of a dense matrix over F_p (p prime, p < 2^32). Rows are consumed.
std::size_t rank_mod_p(std::vector<std::vector<std::uint32_t>>& rows, std::size_t columns, std::uint64_t p);

bool is_prime(std::uint64_t n);

nlohmann::json oracle_report_to_json(const OracleReport& report);

}  // namespace fatpoint
