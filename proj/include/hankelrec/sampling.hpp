#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hankelrec/types.hpp"

namespace hankelrec {

enum class PatternKind { poisson_gap, cartesian_1d, uniform_random, full };

PatternKind pattern_kind_from_string(const std::string& name);
std::string to_string(PatternKind kind);

// Sorted, duplicate-free acquisition schedule over a length-n grid. Patterns
// are pure functions of their generating arguments, so a stored (n, size,
// seed, kind) tuple regenerates the identical index set.
struct SamplingPattern {
  std::vector<int> indices;  // strictly increasing, in [0, n)
  int n = 0;
  std::uint64_t seed = 0;
  PatternKind kind = PatternKind::full;

  int size() const { return static_cast<int>(indices.size()); }
  double rate() const { return n > 0 ? static_cast<double>(size()) / n : 0.0; }
};

// Sinusoidally modulated Poisson gaps: small gaps near the start where
// exponentially decaying signals carry most energy, growing toward the end.
// The gap scale is adjusted geometrically until exactly m indices result.
// Index 0 is always sampled. Requires 1 <= m <= n.
SamplingPattern poisson_gap(int n, int m, std::uint64_t seed);

// Fully sampled contiguous center band of ceil(center_fraction * n) indices
// plus uniformly random extra indices, floor(rate * n) total.
SamplingPattern cartesian_1d(int n, double rate, double center_fraction, std::uint64_t seed);

// m indices drawn uniformly without replacement.
SamplingPattern uniform_random(int n, int m, std::uint64_t seed);

SamplingPattern full_pattern(int n);

// Generic entry point used by the CLI: m is ignored for "full".
SamplingPattern make_pattern(PatternKind kind, int n, int m, double center_fraction,
                             std::uint64_t seed);

// U: restriction to the sampled indices (length pattern.size()).
cvec apply_u(const cvec& x, const SamplingPattern& pattern);

// U*: zero-filled embedding back onto the length-n grid.
cvec apply_u_star(const cvec& y, const SamplingPattern& pattern);

// Dense 0/1 membership view.
std::vector<bool> pattern_mask(const SamplingPattern& pattern);

}  // namespace hankelrec
