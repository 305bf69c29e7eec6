#include "hankelrec/signal.hpp"

#include <cmath>

namespace hankelrec {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

cvec synthesize(const ExponentialModel& model) {
  if (model.length < 0) throw ConfigError("signal length must be non-negative");
  if (model.sample_interval <= 0.0) throw ConfigError("sample interval must be positive");
  cvec x = cvec::Zero(model.length);
  for (const Peak& p : model.peaks) {
    if (p.damping <= 0.0) throw ConfigError("peak damping must be positive");
    const cplx base = p.amplitude * std::exp(cplx(0.0, p.phase));
    for (int n = 0; n < model.length; ++n) {
      const double t = n * model.sample_interval;
      x[n] += base * std::exp(cplx(-t / p.damping, 2.0 * kPi * p.frequency * t));
    }
  }
  return x;
}

namespace {

ExponentialModel fivepeak(const double (&amps)[5]) {
  const double taus[5] = {50.0, 75.0, 100.0, 125.0, 150.0};
  const double freqs[5] = {0.165, 0.333, 0.498, 0.667, 0.831};
  const double phases[5] = {0.4 * kPi, 0.8 * kPi, 1.2 * kPi, 1.6 * kPi, 2.0 * kPi};
  ExponentialModel m;
  m.sample_interval = 1.0;
  m.length = 255;
  for (int g = 0; g < 5; ++g) m.peaks.push_back({amps[g], taus[g], freqs[g], phases[g]});
  return m;
}

}  // namespace

ExponentialModel fivepeak_a() {
  const double amps[5] = {0.300, 0.475, 0.650, 0.825, 1.000};
  return fivepeak(amps);
}

ExponentialModel fivepeak_b() {
  const double amps[5] = {0.100, 0.325, 0.550, 0.775, 1.000};
  return fivepeak(amps);
}

ExponentialModel preset_signal(const std::string& name) {
  if (name == "fivepeak-a") return fivepeak_a();
  if (name == "fivepeak-b") return fivepeak_b();
  throw ConfigError("unknown signal preset: " + name);
}

ExponentialModel sample_model(const TrainingRanges& r, Rng& rng) {
  if (r.peaks_min < 0 || r.peaks_max < r.peaks_min) throw ConfigError("invalid peak count range");
  if (r.amplitude_max < r.amplitude_min || r.damping_max < r.damping_min ||
      r.frequency_max < r.frequency_min || r.phase_max < r.phase_min || r.noise_max < 0.0)
    throw ConfigError("invalid model parameter range");
  if (r.damping_min <= 0.0) throw ConfigError("damping range must be positive");
  ExponentialModel m;
  m.length = r.length;
  const int count = r.peaks_min + rng.uniform_int(r.peaks_max - r.peaks_min + 1);
  for (int g = 0; g < count; ++g) {
    Peak p;
    p.amplitude = rng.uniform(r.amplitude_min, r.amplitude_max);
    p.damping = rng.uniform(r.damping_min, r.damping_max);
    p.frequency = rng.uniform(r.frequency_min, r.frequency_max);
    p.phase = rng.uniform(r.phase_min, r.phase_max);
    m.peaks.push_back(p);
  }
  return m;
}

double sample_noise_scale(const TrainingRanges& r, Rng& rng) {
  return rng.uniform(0.0, r.noise_max);
}

NoiseKind noise_kind_from_string(const std::string& name) {
  if (name == "gaussian") return NoiseKind::gaussian;
  if (name == "uniform") return NoiseKind::uniform;
  throw ConfigError("unknown noise kind: " + name);
}

std::string to_string(NoiseKind kind) {
  return kind == NoiseKind::gaussian ? "gaussian" : "uniform";
}

cvec add_noise(const cvec& x, NoiseKind kind, double scale, Rng& rng) {
  if (scale < 0.0) throw ConfigError("noise scale must be non-negative");
  cvec out = x;
  for (Eigen::Index n = 0; n < out.size(); ++n) {
    double re, im;
    if (kind == NoiseKind::gaussian) {
      re = scale * rng.normal();
      im = scale * rng.normal();
    } else {
      re = rng.uniform(-scale, scale);
      im = rng.uniform(-scale, scale);
    }
    out[n] += cplx(re, im);
  }
  return out;
}

}  // namespace hankelrec
