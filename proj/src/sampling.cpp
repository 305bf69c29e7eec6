#include "hankelrec/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hankelrec/rng.hpp"

namespace hankelrec {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

PatternKind pattern_kind_from_string(const std::string& name) {
  if (name == "poisson-gap") return PatternKind::poisson_gap;
  if (name == "cartesian-1d") return PatternKind::cartesian_1d;
  if (name == "uniform-random") return PatternKind::uniform_random;
  if (name == "full") return PatternKind::full;
  throw ConfigError("unknown sampling pattern: " + name);
}

std::string to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::poisson_gap: return "poisson-gap";
    case PatternKind::cartesian_1d: return "cartesian-1d";
    case PatternKind::uniform_random: return "uniform-random";
    case PatternKind::full: return "full";
  }
  throw ConfigError("invalid pattern kind");
}

SamplingPattern poisson_gap(int n, int m, std::uint64_t seed) {
  if (n <= 0 || m <= 0 || m > n) throw ConfigError("poisson_gap requires 1 <= m <= n");
  SamplingPattern p;
  p.n = n;
  p.seed = seed;
  p.kind = PatternKind::poisson_gap;
  if (m == n) {
    p.indices.resize(n);
    std::iota(p.indices.begin(), p.indices.end(), 0);
    return p;
  }
  Rng rng(mix_seed(seed));
  const double base = static_cast<double>(n) / m - 1.0;
  double adj = 2.0;
  // Retry with a rescaled gap size until the pass lands on exactly m samples.
  // The random stream continues across retries, so the result stays a pure
  // function of (n, m, seed).
  for (;;) {
    std::vector<int> idx;
    int i = 0;
    int count = 0;
    while (i < n) {
      if (count < m) idx.push_back(i);
      ++count;
      ++i;
      const double theta = kPi * i / (n + 1);
      i += rng.poisson(base * adj * std::sin(0.5 * theta));
    }
    if (count == m) {
      p.indices = std::move(idx);
      return p;
    }
    adj *= (count > m) ? 1.02 : (1.0 / 1.02);
  }
}

namespace {

// Partial Fisher-Yates: first k entries of a shuffle of pool.
std::vector<int> draw_without_replacement(std::vector<int> pool, int k, Rng& rng) {
  const int size = static_cast<int>(pool.size());
  for (int i = 0; i < k; ++i) {
    const int j = i + rng.uniform_int(size - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

SamplingPattern cartesian_1d(int n, double rate, double center_fraction, std::uint64_t seed) {
  if (n <= 0) throw ConfigError("cartesian_1d requires positive length");
  if (rate <= 0.0 || rate > 1.0) throw ConfigError("cartesian_1d rate must be in (0, 1]");
  if (center_fraction < 0.0 || center_fraction > rate)
    throw ConfigError("center fraction must lie in [0, rate]");
  const int total = static_cast<int>(std::floor(rate * n));
  const int ncenter = static_cast<int>(std::ceil(center_fraction * n));
  if (ncenter > total) throw ConfigError("center band exceeds the sample budget");
  const int start = (n - ncenter) / 2;

  std::vector<bool> taken(n, false);
  for (int i = start; i < start + ncenter; ++i) taken[i] = true;
  std::vector<int> rest;
  rest.reserve(n - ncenter);
  for (int i = 0; i < n; ++i)
    if (!taken[i]) rest.push_back(i);

  Rng rng(mix_seed(seed));
  for (int i : draw_without_replacement(std::move(rest), total - ncenter, rng)) taken[i] = true;

  SamplingPattern p;
  p.n = n;
  p.seed = seed;
  p.kind = PatternKind::cartesian_1d;
  for (int i = 0; i < n; ++i)
    if (taken[i]) p.indices.push_back(i);
  return p;
}

SamplingPattern uniform_random(int n, int m, std::uint64_t seed) {
  if (n <= 0 || m <= 0 || m > n) throw ConfigError("uniform_random requires 1 <= m <= n");
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  Rng rng(mix_seed(seed));
  SamplingPattern p;
  p.n = n;
  p.seed = seed;
  p.kind = PatternKind::uniform_random;
  p.indices = draw_without_replacement(std::move(pool), m, rng);
  std::sort(p.indices.begin(), p.indices.end());
  return p;
}

SamplingPattern full_pattern(int n) {
  if (n <= 0) throw ConfigError("full_pattern requires positive length");
  SamplingPattern p;
  p.n = n;
  p.kind = PatternKind::full;
  p.indices.resize(n);
  std::iota(p.indices.begin(), p.indices.end(), 0);
  return p;
}

SamplingPattern make_pattern(PatternKind kind, int n, int m, double center_fraction,
                             std::uint64_t seed) {
  switch (kind) {
    case PatternKind::poisson_gap: return poisson_gap(n, m, seed);
    case PatternKind::cartesian_1d:
      return cartesian_1d(n, n > 0 ? static_cast<double>(m) / n : 0.0, center_fraction, seed);
    case PatternKind::uniform_random: return uniform_random(n, m, seed);
    case PatternKind::full: return full_pattern(n);
  }
  throw ConfigError("invalid pattern kind");
}

cvec apply_u(const cvec& x, const SamplingPattern& pattern) {
  if (x.size() != pattern.n) throw ConfigError("signal length does not match pattern grid");
  cvec y(pattern.size());
  for (int k = 0; k < pattern.size(); ++k) y[k] = x[pattern.indices[k]];
  return y;
}

cvec apply_u_star(const cvec& y, const SamplingPattern& pattern) {
  if (y.size() != pattern.size()) throw ConfigError("sample count does not match pattern");
  cvec x = cvec::Zero(pattern.n);
  for (int k = 0; k < pattern.size(); ++k) x[pattern.indices[k]] = y[k];
  return x;
}

std::vector<bool> pattern_mask(const SamplingPattern& pattern) {
  std::vector<bool> mask(pattern.n, false);
  for (int i : pattern.indices) mask[i] = true;
  return mask;
}

}  // namespace hankelrec
