#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hankelrec/rng.hpp"
#include "hankelrec/types.hpp"

namespace hankelrec {

// One complex exponential component. frequency is in cycles per sample
// interval and is kept in [0, 1); damping is the decay time constant in the
// same units as the sample interval.
struct Peak {
  double amplitude = 1.0;
  double damping = 100.0;
  double frequency = 0.0;
  double phase = 0.0;
};

struct ExponentialModel {
  std::vector<Peak> peaks;
  double sample_interval = 1.0;
  int length = 255;
};

// x[n] = sum_g A_g exp(i phi_g) exp(-n dt / tau_g) exp(i 2 pi f_g n dt).
// An empty peak list yields the zero signal.
cvec synthesize(const ExponentialModel& model);

// Built-in five-component test signals. Both share dampings, frequencies and
// phases; variant "b" has a wider amplitude spread than variant "a".
ExponentialModel fivepeak_a();
ExponentialModel fivepeak_b();

// Lookup by name ("fivepeak-a" / "fivepeak-b"); throws ConfigError otherwise.
ExponentialModel preset_signal(const std::string& name);

// Parameter ranges for randomly drawn models. Defaults cover the regime the
// bundled block-parameter schedules were tuned for.
struct TrainingRanges {
  int peaks_min = 1;
  int peaks_max = 10;
  double amplitude_min = 0.05;
  double amplitude_max = 1.00;
  double damping_min = 10.00;
  double damping_max = 179.20;
  double frequency_min = 0.0;
  double frequency_max = 1.0;  // exclusive
  double phase_min = 0.0;
  double phase_max = 6.28318530717958647692;  // exclusive
  double noise_max = 0.04;
  int length = 255;
};

// Draws peak count uniformly in [peaks_min, peaks_max], then each parameter
// uniformly from its range. Throws ConfigError on inverted ranges.
ExponentialModel sample_model(const TrainingRanges& ranges, Rng& rng);

// Noise level paired with sample_model: one standard deviation per signal,
// drawn uniformly from [0, noise_max].
double sample_noise_scale(const TrainingRanges& ranges, Rng& rng);

enum class NoiseKind { gaussian, uniform };

NoiseKind noise_kind_from_string(const std::string& name);
std::string to_string(NoiseKind kind);

// Adds i.i.d. noise to every real and imaginary component. For gaussian noise
// scale is the per-component standard deviation; for uniform noise the
// components are drawn from [-scale, scale].
cvec add_noise(const cvec& x, NoiseKind kind, double scale, Rng& rng);

}  // namespace hankelrec
