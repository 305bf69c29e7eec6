#pragma once

#include <cstdint>
#include <random>

namespace hankelrec {

// Deterministic random source. All distribution transforms are implemented on
// top of the raw 64-bit stream so that a given seed produces identical draws
// on every platform; std::mt19937_64 is bit-exact by the standard, while the
// std:: distribution adapters are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of mantissa.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Integer uniform on [0, n). Rejection sampling keeps the draw unbiased.
  int uniform_int(int n);

  // Standard normal via Box-Muller. One fresh pair of uniforms per call; the
  // second coordinate is discarded to keep call sites stateless.
  double normal();

  // Poisson counting by exponential inter-arrival products (Knuth). Fine for
  // the small means used by gap sampling.
  int poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer, used to derive well-separated child seeds from a base
// seed plus stream indices.
std::uint64_t mix_seed(std::uint64_t seed);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t substream);

}  // namespace hankelrec
