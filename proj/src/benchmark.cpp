#include "hankelrec/benchmark.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hankelrec/fftu.hpp"
#include "hankelrec/hankel.hpp"
#include "hankelrec/io.hpp"
#include "hankelrec/metrics.hpp"
#include "hankelrec/rng.hpp"
#include "hankelrec/threads.hpp"

namespace hankelrec {

namespace {

// Stream tags keeping the per-purpose RNG streams disjoint.
constexpr std::uint64_t kStreamPattern = 1;
constexpr std::uint64_t kStreamNoise = 2;
constexpr std::uint64_t kStreamModel = 3;
constexpr std::uint64_t kStreamReference = 4;

int samples_for_rate(double rate, int n) {
  const int m = static_cast<int>(std::lround(rate * n));
  return std::min(std::max(m, 1), n);
}

}  // namespace

void BenchmarkSpec::validate() const {
  if (rates.empty()) throw ConfigError("benchmark needs at least one rate");
  for (double r : rates)
    if (r <= 0.0 || r > 1.0) throw ConfigError("rates must lie in (0, 1]");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (noise_scale < 0.0) throw ConfigError("noise scale must be non-negative");
  if (!random_signals && signal.length < 8) throw ConfigError("signal too short to benchmark");
}

BenchmarkReport run_benchmark(const BenchmarkSpec& spec) {
  spec.validate();
  const int n_rates = static_cast<int>(spec.rates.size());
  const int total = n_rates * spec.trials;
  BenchmarkReport report;
  report.trials.resize(total);

  parallel_for(total, spec.threads, [&](int job) {
    const int rate_index = job / spec.trials;
    const int trial = job % spec.trials;
    const double rate = spec.rates[rate_index];
    const std::uint64_t rtag = static_cast<std::uint64_t>(rate_index);

    ExponentialModel model = spec.signal;
    if (spec.random_signals) {
      Rng model_rng(derive_seed(spec.seed, kStreamModel * 1000 + rtag, trial));
      model = sample_model(spec.ranges, model_rng);
    }
    const cvec truth = synthesize(model);
    const int n = static_cast<int>(truth.size());

    const std::uint64_t pattern_seed = derive_seed(spec.seed, kStreamPattern * 1000 + rtag, trial);
    const SamplingPattern pattern =
        make_pattern(spec.pattern_kind, n, samples_for_rate(rate, n), spec.center_fraction,
                     pattern_seed);

    cvec y = apply_u(truth, pattern);
    if (spec.noise_scale > 0.0) {
      Rng noise_rng(derive_seed(spec.seed, kStreamNoise * 1000 + rtag, trial));
      y = add_noise(y, spec.noise_kind, spec.noise_scale, noise_rng);
    }

    RowSolverOptions options = spec.solver;
    options.threads = 1;
    if (spec.auto_fidelity) {
      options.solver.lambda = fidelity_ratio_for_rate(rate) * options.solver.beta;
      options.cs_lambda = cs_lambda_for_rate(rate);
    }

    const HankelShape shape = default_shape(n);
    cvec recon;
    int iterations = 0;
    switch (options.choice) {
      case SolverChoice::penalty: {
        SolveResult res = penalty_solve(y, pattern, options.solver, shape);
        recon = std::move(res.x);
        iterations = res.iterations;
        break;
      }
      case SolverChoice::admm: {
        SolveResult res = admm_lrhmf_solve(y, pattern, options.solver, shape);
        recon = std::move(res.x);
        iterations = res.iterations;
        break;
      }
      case SolverChoice::svt:
        recon = svt_nuclear_solve(y, pattern, options.svt_lambda, options.svt_iters, shape);
        iterations = options.svt_iters;
        break;
      case SolverChoice::cs:
        recon = cs_solve(y, pattern, options.cs_lambda, options.cs_iters);
        iterations = options.cs_iters;
        break;
      case SolverChoice::pipeline: {
        PipelineResult res = run_pipeline(y, pattern, options.pipeline, shape);
        recon = std::move(res.x);
        iterations = static_cast<int>(res.diagnostics.size());
        break;
      }
    }

    TrialResult t;
    t.rate_index = rate_index;
    t.rate = rate;
    t.trial = trial;
    t.pattern_seed = pattern_seed;
    t.rlne = rlne(truth, recon);
    t.effective_rank = effective_rank(recon, shape);
    t.iterations = iterations;

    const cvec truth_spec = fft_u(truth);
    const cvec recon_spec = fft_u(recon);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    try {
      const std::vector<double> per_peak = peak_rlne(truth_spec, recon_spec);
      double sum = 0.0, largest = 0.0;
      for (double v : per_peak) {
        sum += v;
        largest = std::max(largest, v);
      }
      t.peak_rlne_mean = sum / static_cast<double>(per_peak.size());
      t.peak_rlne_max = largest;
    } catch (const ConfigError&) {
      t.peak_rlne_mean = nan;
      t.peak_rlne_max = nan;
    }
    const rvec mag = truth_spec.cwiseAbs();
    const std::vector<int> peaks = detect_peaks(mag);
    if (peaks.size() >= 2) {
      rvec a(peaks.size()), b(peaks.size());
      for (std::size_t i = 0; i < peaks.size(); ++i) {
        a[static_cast<Eigen::Index>(i)] = mag[peaks[i]];
        b[static_cast<Eigen::Index>(i)] = std::abs(recon_spec[peaks[i]]);
      }
      try {
        t.r2 = pearson_r2(a, b);
      } catch (const ConfigError&) {
        t.r2 = nan;
      }
    } else {
      t.r2 = nan;
    }
    report.trials[job] = std::move(t);
  });

  for (int ri = 0; ri < n_rates; ++ri) {
    RateAggregate agg;
    agg.rate = spec.rates[ri];
    agg.trials = spec.trials;
    double sum = 0.0, sum_sq = 0.0, sum_peak = 0.0, sum_rank = 0.0, sum_iters = 0.0;
    double sum_r2 = 0.0;
    int r2_count = 0;
    for (int t = 0; t < spec.trials; ++t) {
      const TrialResult& row = report.trials[ri * spec.trials + t];
      sum += row.rlne;
      sum_sq += row.rlne * row.rlne;
      sum_peak += row.peak_rlne_max;
      sum_rank += row.effective_rank;
      sum_iters += row.iterations;
      if (!std::isnan(row.r2)) {
        sum_r2 += row.r2;
        ++r2_count;
      }
    }
    const double count = spec.trials;
    agg.mean_rlne = sum / count;
    agg.std_rlne =
        spec.trials > 1 ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / count) / (count - 1.0)))
                        : 0.0;
    agg.mean_peak_rlne_max = sum_peak / count;
    agg.mean_effective_rank = sum_rank / count;
    agg.mean_r2 = r2_count > 0 ? sum_r2 / r2_count : std::numeric_limits<double>::quiet_NaN();
    agg.mean_iterations = sum_iters / count;
    report.aggregates.push_back(agg);
  }
  return report;
}

std::string benchmark_trials_csv(const BenchmarkReport& report, const std::string& provenance) {
  std::ostringstream out;
  out << provenance;
  out << "rate,trial,pattern_seed,rlne,peak_rlne_mean,peak_rlne_max,effective_rank,r2,"
         "iterations\n";
  for (const TrialResult& t : report.trials)
    out << format_double(t.rate) << "," << t.trial << "," << t.pattern_seed << ","
        << format_double(t.rlne) << "," << format_double(t.peak_rlne_mean) << ","
        << format_double(t.peak_rlne_max) << "," << t.effective_rank << ","
        << format_double(t.r2) << "," << t.iterations << "\n";
  return out.str();
}

std::string benchmark_summary_csv(const BenchmarkReport& report, const std::string& provenance) {
  std::ostringstream out;
  out << provenance;
  out << "rate,trials,mean_rlne,std_rlne,mean_peak_rlne_max,mean_effective_rank,mean_r2,"
         "mean_iterations\n";
  for (const RateAggregate& a : report.aggregates)
    out << format_double(a.rate) << "," << a.trials << "," << format_double(a.mean_rlne) << ","
        << format_double(a.std_rlne) << "," << format_double(a.mean_peak_rlne_max) << ","
        << format_double(a.mean_effective_rank) << "," << format_double(a.mean_r2) << ","
        << format_double(a.mean_iterations) << "\n";
  return out.str();
}

void MismatchSpec::validate() const {
  if (rates.empty()) throw ConfigError("mismatch needs at least one rate");
  for (double r : rates)
    if (r <= 0.0 || r > 1.0) throw ConfigError("rates must lie in (0, 1]");
  if (reference_rate <= 0.0 || reference_rate > 1.0)
    throw ConfigError("reference rate must lie in (0, 1]");
  if (signals < 1) throw ConfigError("mismatch needs at least one signal per set");
}

namespace {

std::vector<cvec> zero_filled_set(const MismatchSpec& spec, double rate, std::uint64_t stream) {
  std::vector<cvec> set;
  set.reserve(spec.signals);
  for (int i = 0; i < spec.signals; ++i) {
    Rng model_rng(derive_seed(spec.seed, stream, 3ULL * i));
    Rng noise_rng(derive_seed(spec.seed, stream, 3ULL * i + 1));
    const ExponentialModel model = sample_model(spec.ranges, model_rng);
    cvec x = synthesize(model);
    const double sigma = sample_noise_scale(spec.ranges, noise_rng);
    if (sigma > 0.0) x = add_noise(x, NoiseKind::gaussian, sigma, noise_rng);
    const int n = static_cast<int>(x.size());
    const SamplingPattern pattern =
        make_pattern(spec.pattern_kind, n, samples_for_rate(rate, n), spec.center_fraction,
                     derive_seed(spec.seed, stream, 3ULL * i + 2));
    set.push_back(apply_u_star(apply_u(x, pattern), pattern));
  }
  return set;
}

}  // namespace

std::vector<MismatchRow> run_mismatch(const MismatchSpec& spec) {
  spec.validate();
  const std::vector<cvec> reference = zero_filled_set(spec, spec.reference_rate, kStreamReference);
  std::vector<MismatchRow> rows;
  for (std::size_t ri = 0; ri < spec.rates.size(); ++ri) {
    const std::vector<cvec> probe =
        zero_filled_set(spec, spec.rates[ri], kStreamPattern * 1000 + ri);
    // Each comparison shares one range pooled over both sets involved.
    const auto range = shared_histogram_range({&reference, &probe}, spec.log_scaled);
    const Histogram101 p = build_histogram(reference, spec.log_scaled, range);
    const Histogram101 q = build_histogram(probe, spec.log_scaled, range);
    MismatchRow row;
    row.dataset = spec.dataset_label;
    row.rate = spec.rates[ri];
    row.distance = wasserstein_01(p, q);
    rows.push_back(row);
  }
  return rows;
}

std::string mismatch_csv(const std::vector<MismatchRow>& rows, const std::string& provenance) {
  std::ostringstream out;
  out << provenance;
  out << "dataset,rate,distance\n";
  for (const MismatchRow& r : rows)
    out << r.dataset << "," << format_double(r.rate) << "," << format_double(r.distance) << "\n";
  return out.str();
}

}  // namespace hankelrec
