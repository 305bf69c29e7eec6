#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hankelrec/nmr.hpp"
#include "hankelrec/sampling.hpp"
#include "hankelrec/signal.hpp"
#include "hankelrec/types.hpp"

namespace hankelrec {

// Rate sweep protocol: for every rate, `trials` independent (pattern, noise)
// draws of the same experiment, reconstructed and scored against the clean
// signal. Per-trial random streams are derived from (seed, rate index,
// trial), so results are independent of scheduling.
struct BenchmarkSpec {
  ExponentialModel signal;      // used unless random_signals
  bool random_signals = false;  // draw a fresh model per trial
  TrainingRanges ranges;        // random-signal parameter ranges

  NoiseKind noise_kind = NoiseKind::gaussian;
  double noise_scale = 0.0;  // applied to the acquired samples

  PatternKind pattern_kind = PatternKind::poisson_gap;
  double center_fraction = 0.08;  // cartesian patterns only
  std::vector<double> rates;
  int trials = 1;

  RowSolverOptions solver;
  // Pick lambda (and the cs weight) from the per-rate tables instead of the
  // fixed values in `solver`.
  bool auto_fidelity = true;

  std::uint64_t seed = 1;
  int threads = 1;

  void validate() const;
};

struct TrialResult {
  int rate_index = 0;
  double rate = 0.0;
  int trial = 0;
  std::uint64_t pattern_seed = 0;
  double rlne = 0.0;
  double peak_rlne_mean = 0.0;
  double peak_rlne_max = 0.0;
  int effective_rank = 0;
  double r2 = 0.0;  // NaN when fewer than 2 truth peaks
  int iterations = 0;
};

struct RateAggregate {
  double rate = 0.0;
  int trials = 0;
  double mean_rlne = 0.0;
  double std_rlne = 0.0;
  double mean_peak_rlne_max = 0.0;
  double mean_effective_rank = 0.0;
  double mean_r2 = 0.0;
  double mean_iterations = 0.0;
};

struct BenchmarkReport {
  std::vector<TrialResult> trials;
  std::vector<RateAggregate> aggregates;
};

BenchmarkReport run_benchmark(const BenchmarkSpec& spec);

// CSV emitters. provenance lines (already '#'-prefixed) are embedded first;
// wall-clock time is deliberately absent so identical runs match byte for
// byte.
std::string benchmark_trials_csv(const BenchmarkReport& report, const std::string& provenance);
std::string benchmark_summary_csv(const BenchmarkReport& report, const std::string& provenance);

// Sampling-mismatch protocol: magnitude histograms of zero-filled random
// signal sets, one reference set at reference_rate, one probe set per rate,
// compared by the 0/1-cost transport distance. The probe drawn at the
// reference rate (from different seeds) should minimize the distance.
struct MismatchSpec {
  TrainingRanges ranges;
  PatternKind pattern_kind = PatternKind::poisson_gap;
  double center_fraction = 0.08;
  double reference_rate = 0.25;
  std::vector<double> rates;
  int signals = 100;  // per set
  bool log_scaled = false;
  std::uint64_t seed = 1;
  std::string dataset_label = "exponential";

  void validate() const;
};

struct MismatchRow {
  std::string dataset;
  double rate = 0.0;
  double distance = 0.0;
};

std::vector<MismatchRow> run_mismatch(const MismatchSpec& spec);
std::string mismatch_csv(const std::vector<MismatchRow>& rows, const std::string& provenance);

}  // namespace hankelrec
