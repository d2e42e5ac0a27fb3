#include "fatpoint/oracle.hpp"

#include "fatpoint/serialization.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace fatpoint {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform draw from [0, p) by rejection, independent of the standard
// library's distribution implementation.
u64 uniform_below(std::mt19937_64& gen, u64 p) {
  const u64 limit = (~u64{0} / p) * p;
  u64 x;
  do {
    x = gen();
  } while (x >= limit);
  return x % p;
}

// Reduction of x < 2^64 modulo a fixed p < 2^32.
struct Barrett {
  u64 p;
  u64 inv;  // floor(2^64 / p)
  explicit Barrett(u64 p_) : p(p_), inv(static_cast<u64>((u128{1} << 64) / p_)) {}
  u64 reduce(u64 x) const {
    u64 q = static_cast<u64>((static_cast<u128>(x) * inv) >> 64);
    u64 r = x - q * p;
    return r >= p ? r - p : r;
  }
};

// p = 2^31 - 1.
struct Mersenne31 {
  static constexpr u64 p = 2147483647ULL;
  static u64 reduce(u64 x) {
    x = (x & p) + (x >> 31);
    x = (x & p) + (x >> 31);
    return x >= p ? x - p : x;
  }
};

u64 pow_mod(u64 b, u64 e, u64 p) {
  u64 r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * b % p);
    b = static_cast<u64>(static_cast<u128>(b) * b % p);
    e >>= 1;
  }
  return r;
}

template <class Reducer>
std::size_t eliminate(std::vector<std::vector<u32>>& rows, std::size_t cols, const Reducer& red) {
  const u64 p = red.p;
  std::size_t rank = 0;
  const std::size_t n = rows.size();
  for (std::size_t c = 0; c < cols && rank < n; ++c) {
    std::size_t piv = rank;
    while (piv < n && rows[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(rows[rank], rows[piv]);
    std::vector<u32>& top = rows[rank];
    const u64 inv = pow_mod(top[c], p - 2, p);
    for (std::size_t j = c; j < cols; ++j) top[j] = static_cast<u32>(red.reduce(top[j] * inv));
    for (std::size_t i = rank + 1; i < n; ++i) {
      std::vector<u32>& row = rows[i];
      const u64 f = row[c];
      if (f == 0) continue;
      const u64 g = p - f;
      u32* __restrict dst = row.data();
      const u32* __restrict src = top.data();
      for (std::size_t j = c; j < cols; ++j) dst[j] = static_cast<u32>(red.reduce(dst[j] + g * src[j]));
    }
    ++rank;
    if (rank == cols) break;
  }
  return rank;
}

// Exponent vectors of N affine variables with total degree <= d, in graded
// order.
std::vector<std::vector<int>> exponents(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(n, 0);
  for (int total = 0; total <= d; ++total) {
    // enumerate compositions of `total` into n nonnegative parts
    std::fill(e.begin(), e.end(), 0);
    e[0] = total;
    while (true) {
      out.push_back(e);
      // next composition in reverse-lexicographic order
      int i = n - 2;
      while (i >= 0 && e[i] == 0) --i;
      if (i < 0) break;
      --e[i];
      int rest = e[n - 1] + 1;
      e[n - 1] = 0;
      e[i + 1] = rest;
    }
  }
  return out;
}

std::int64_t one_trial(int n, std::int64_t d, const std::vector<std::int64_t>& mults, const OracleConfig& cfg,
                       unsigned trial) {
  const u64 p = cfg.prime;
  std::mt19937_64 gen(splitmix64(cfg.seed ^ splitmix64(trial + 1)));

  std::vector<std::int64_t> active;
  for (auto m : mults) {
    if (m > 0) active.push_back(m);
  }
  // Points are drawn for every listed multiplicity so that a system's points
  // do not depend on which of them happen to be zero.
  std::vector<std::vector<u64>> pts;
  for (std::size_t i = 0; i < mults.size(); ++i) {
    std::vector<u64> x(n);
    int attempts = 0;
    do {
      if (++attempts > 1000) throw std::runtime_error("could not draw distinct points");
      for (auto& v : x) v = uniform_below(gen, p);
    } while (std::find(pts.begin(), pts.end(), x) != pts.end());
    pts.push_back(std::move(x));
  }

  const auto cols_e = exponents(n, static_cast<int>(d));
  const std::size_t cols = cols_e.size();

  // binom[a][b] = C(a, b) mod p for a <= d
  std::vector<std::vector<u64>> binom(d + 1, std::vector<u64>(d + 1, 0));
  for (std::int64_t a = 0; a <= d; ++a) {
    binom[a][0] = 1;
    for (std::int64_t b = 1; b <= a; ++b) binom[a][b] = (binom[a - 1][b - 1] + (b <= a - 1 ? binom[a - 1][b] : 0)) % p;
  }

  std::vector<std::vector<u32>> rows;
  for (std::size_t i = 0; i < mults.size(); ++i) {
    const std::int64_t m = mults[i];
    if (m <= 0) continue;
    // pw[k][e] = x_k^e
    std::vector<std::vector<u64>> pw(n, std::vector<u64>(d + 1, 1));
    for (int k = 0; k < n; ++k)
      for (std::int64_t e = 1; e <= d; ++e) pw[k][e] = pw[k][e - 1] * pts[i][k] % p;
    for (const auto& beta : exponents(n, static_cast<int>(std::min<std::int64_t>(m - 1, d)))) {
      std::vector<u32> row(cols, 0);
      for (std::size_t c = 0; c < cols; ++c) {
        const auto& e = cols_e[c];
        u64 v = 1;
        for (int k = 0; k < n && v; ++k) {
          if (beta[k] > e[k]) {
            v = 0;
          } else {
            v = v * binom[e[k]][beta[k]] % p * pw[k][e[k] - beta[k]] % p;
          }
        }
        row[c] = static_cast<u32>(v);
      }
      rows.push_back(std::move(row));
    }
  }
  std::size_t rank = rank_mod_p(rows, cols, p);
  return static_cast<std::int64_t>(cols - rank);
}

OracleReport run_trials(int n, std::int64_t d, const std::vector<std::int64_t>& mults, const OracleConfig& cfg,
                        bool stop_at_zero) {
  validate_oracle_config(cfg, d, mults);
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  OracleReport r{.dimension = n, .degree = d, .multiplicities = mults, .config = cfg};
  for (unsigned t = 0; t < cfg.trials; ++t) {
    r.dims.push_back(one_trial(n, d, mults, cfg, t));
    if (stop_at_zero && r.dims.back() == 0) break;
  }
  r.value = *std::min_element(r.dims.begin(), r.dims.end());
  return r;
}

bool positive_dim(int n, std::int64_t d, const std::vector<std::int64_t>& mults, const OracleConfig& cfg) {
  return run_trials(n, d, mults, cfg, true).value > 0;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 dd = n - 1;
  int r = 0;
  while ((dd & 1) == 0) {
    dd >>= 1;
    ++r;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, dd, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = static_cast<u64>(static_cast<u128>(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

void validate_oracle_config(const OracleConfig& cfg, std::int64_t degree, const std::vector<std::int64_t>& mults) {
  if (cfg.trials == 0) throw std::invalid_argument("trials must be positive");
  if (cfg.prime >= (u64{1} << 32) || !is_prime(cfg.prime))
    throw std::invalid_argument("p must be a prime below 2^32");
  if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
  if (cfg.prime <= static_cast<u64>(degree)) throw std::invalid_argument("p must exceed the degree");
  for (auto m : mults) {
    if (m < 0) throw std::invalid_argument("multiplicities must be nonnegative");
    if (cfg.prime <= static_cast<u64>(m)) throw std::invalid_argument("p must exceed every multiplicity");
  }
}

std::uint64_t condition_count(int dimension, const std::vector<std::int64_t>& mults) {
  Integer total = 0;
  for (auto m : mults) {
    if (m > 0) total += binomial(m - 1 + dimension, dimension);
  }
  return static_cast<std::uint64_t>(total);
}

std::size_t rank_mod_p(std::vector<std::vector<std::uint32_t>>& rows, std::size_t columns, std::uint64_t p) {
  if (p == Mersenne31::p) return eliminate(rows, columns, Mersenne31{});
  return eliminate(rows, columns, Barrett(p));
}

OracleReport linear_system_dim(int dimension, std::int64_t degree, const std::vector<std::int64_t>& mults,
                               const OracleConfig& config) {
  return run_trials(dimension, degree, mults, config, false);
}

std::int64_t alpha_symbolic_power(int dimension, std::uint64_t s, std::int64_t m, const OracleConfig& config) {
  if (s < 1 || m < 1) throw std::invalid_argument("alpha_symbolic_power needs s, m >= 1");
  const std::vector<std::int64_t> mults(s, m);
  // More monomials than conditions guarantees a form; no sampling needed.
  const Integer conditions = Integer(s) * binomial(m - 1 + dimension, dimension);
  std::int64_t hi = m;
  while (binomial(hi + dimension, dimension) <= conditions) ++hi;
  // A nonzero form of degree d has order at most d at any point.
  std::int64_t lo = m;
  // Points are fixed per trial, so the dimension is monotone in d.
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (positive_dim(dimension, mid, mults, config)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

Rational waldschmidt_upper_estimate(int dimension, std::uint64_t s, std::int64_t m_max, const OracleConfig& config) {
  if (m_max < 1) throw std::invalid_argument("m_max must be positive");
  Rational best;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    Rational r(alpha_symbolic_power(dimension, s, m, config), m);
    if (m == 1 || r < best) best = r;
  }
  return best;
}

nlohmann::json oracle_report_to_json(const OracleReport& r) {
  FatPointSystem sys = FatPointSystem::concrete(r.dimension, r.degree, r.multiplicities);
  return {{"system", system_to_json(sys)},
          {"p", r.config.prime},
          {"trials", r.config.trials},
          {"seed", r.config.seed},
          {"dims", r.dims},
          {"dimension", r.value}};
}

}  // namespace fatpoint
