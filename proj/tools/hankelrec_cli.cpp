// Command-line front end: synth | mask | reconstruct | benchmark | mismatch |
// plot. Every command reads an optional config file; --seed, --threads and
// --out override the matching config keys. Exit codes: 2 bad configuration,
// 3 I/O failure, 4 solver divergence.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hankelrec/benchmark.hpp"
#include "hankelrec/config.hpp"
#include "hankelrec/io.hpp"
#include "hankelrec/metrics.hpp"
#include "hankelrec/mri.hpp"
#include "hankelrec/nmr.hpp"
#include "hankelrec/rng.hpp"
#include "hankelrec/signal.hpp"
#include "hankelrec/version.hpp"

namespace hr = hankelrec;

namespace {

// Options shared by every subcommand, applied on top of the config file.
struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> out;

  hr::Config load() const {
    hr::Config cfg = config_path.empty() ? hr::Config() : hr::Config::parse_file(config_path);
    if (seed) cfg.set("seed", std::to_string(*seed));
    if (threads) cfg.set("threads", std::to_string(*threads));
    if (out) cfg.set("out", *out);
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Configuration file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", args.seed, "Master seed (overrides the config)");
  cmd->add_option("--threads", args.threads, "Worker threads (overrides the config)")
      ->envname("HANKELREC_THREADS");
  cmd->add_option("--out", args.out, "Output directory (overrides the config)");
}

std::string out_dir(const hr::Config& cfg) {
  const std::string dir = cfg.get_string("out", ".");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw hr::IoError("cannot create output directory: " + dir);
  return dir;
}

int threads_of(const hr::Config& cfg) {
  const int t = cfg.get_int("threads", 1);
  if (t < 1) throw hr::ConfigError("threads must be at least 1");
  return t;
}

// "# <tool version>" plus the resolved configuration, one '#' line per key;
// prepended to every CSV report for provenance. Execution-resource keys
// (threads, out) are omitted: they do not influence the numbers, and their
// absence keeps reruns byte-identical regardless of worker count or
// destination.
std::string provenance(const hr::Config& cfg) {
  std::ostringstream out;
  out << "# " << hr::kVersionString << "\n";
  std::istringstream lines(cfg.resolved_text());
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("threads =", 0) == 0 || line.rfind("out =", 0) == 0) continue;
    out << "# " << line << "\n";
  }
  return out.str();
}

hr::TrainingRanges ranges_from(const hr::Config& cfg) {
  hr::TrainingRanges r;
  r.peaks_min = cfg.get_int("ranges.peaks_min", r.peaks_min);
  r.peaks_max = cfg.get_int("ranges.peaks_max", r.peaks_max);
  r.amplitude_min = cfg.get_double("ranges.amplitude_min", r.amplitude_min);
  r.amplitude_max = cfg.get_double("ranges.amplitude_max", r.amplitude_max);
  r.damping_min = cfg.get_double("ranges.damping_min", r.damping_min);
  r.damping_max = cfg.get_double("ranges.damping_max", r.damping_max);
  r.frequency_min = cfg.get_double("ranges.frequency_min", r.frequency_min);
  r.frequency_max = cfg.get_double("ranges.frequency_max", r.frequency_max);
  r.phase_min = cfg.get_double("ranges.phase_min", r.phase_min);
  r.phase_max = cfg.get_double("ranges.phase_max", r.phase_max);
  r.noise_max = cfg.get_double("ranges.noise_max", r.noise_max);
  r.length = cfg.get_int("ranges.length", r.length);
  return r;
}

hr::NoiseKind noise_kind_from(const hr::Config& cfg) {
  return hr::noise_kind_from_string(cfg.get_string("noise.kind", "gaussian"));
}

hr::RowSolverOptions solver_from(const hr::Config& cfg) {
  hr::RowSolverOptions options;
  options.choice = hr::solver_choice_from_string(cfg.get_string("solver.name", "penalty"));
  options.solver.beta = cfg.get_double("solver.beta", options.solver.beta);
  options.solver.lambda = cfg.get_double("solver.lambda", options.solver.lambda);
  options.solver.rank_cap = cfg.get_int("solver.rank_cap", options.solver.rank_cap);
  options.solver.max_iters = cfg.get_int("solver.max_iters", options.solver.max_iters);
  options.solver.tol = cfg.get_double("solver.tol", options.solver.tol);
  options.cs_lambda = cfg.get_double("solver.cs_lambda", options.cs_lambda);
  options.cs_iters = cfg.get_int("solver.cs_iters", options.cs_iters);
  options.svt_lambda = cfg.get_double("solver.svt_lambda", options.svt_lambda);
  options.svt_iters = cfg.get_int("solver.svt_iters", options.svt_iters);

  options.pipeline.mode =
      hr::pipeline_mode_from_string(cfg.get_string("pipeline.mode", "alternating"));
  options.pipeline.rank_cap = cfg.get_int("pipeline.rank_cap", 10);
  const std::string blocks = cfg.get_string("pipeline.blocks", "exponential");
  if (blocks == "exponential")
    options.pipeline.blocks = hr::default_blocks_exponential();
  else if (blocks == "mri")
    options.pipeline.blocks = hr::default_blocks_mri();
  else
    throw hr::ConfigError("unknown pipeline blocks: " + blocks);
  return options;
}

// The pipeline plugin outlives solver_from, so ownership sits with the caller.
std::unique_ptr<hr::PluginSolver> plugin_from(const hr::Config& cfg) {
  return hr::make_plugin(cfg.get_string("pipeline.plugin", "zero"));
}

int samples_for(double rate, int n) {
  const int m = static_cast<int>(std::lround(rate * n));
  return std::min(std::max(m, 1), n);
}

hr::SamplingPattern pattern_from(const hr::Config& cfg, int n, std::uint64_t seed) {
  const hr::PatternKind kind =
      hr::pattern_kind_from_string(cfg.get_string("pattern.kind", "poisson-gap"));
  const double rate = cfg.get_double("pattern.rate", 1.0);
  if (rate <= 0.0 || rate > 1.0) throw hr::ConfigError("pattern.rate must lie in (0, 1]");
  return hr::make_pattern(kind, n, samples_for(rate, n),
                          cfg.get_double("pattern.center_fraction", 0.08), seed);
}

std::string zero_pad(int value, int width) {
  std::string s = std::to_string(value);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

// ---------------------------------------------------------------------------

int cmd_synth(const CommonArgs& common) {
  const hr::Config cfg = common.load();
  const std::string dir = out_dir(cfg);
  const std::uint64_t seed = cfg.get_seed("seed", 1);
  const std::string source = cfg.get_string("signal.source", "preset");
  const double noise_scale = cfg.get_double("noise.scale", 0.0);
  const hr::NoiseKind noise_kind = noise_kind_from(cfg);

  std::vector<hr::cvec> signals;
  if (source == "preset") {
    signals.push_back(hr::synthesize(hr::preset_signal(cfg.get_string("signal.preset"))));
  } else if (source == "random") {
    const hr::TrainingRanges ranges = ranges_from(cfg);
    const int count = cfg.get_int("signal.count", 1);
    if (count < 1) throw hr::ConfigError("signal.count must be at least 1");
    for (int i = 0; i < count; ++i) {
      hr::Rng rng(hr::derive_seed(seed, 10, i));
      signals.push_back(hr::synthesize(hr::sample_model(ranges, rng)));
    }
  } else if (source == "file") {
    signals.push_back(hr::read_cplx(cfg.get_string("signal.file")).as_vector());
  } else {
    throw hr::ConfigError("unknown signal source: " + source);
  }

  for (std::size_t i = 0; i < signals.size(); ++i) {
    if (noise_scale > 0.0) {
      hr::Rng rng(hr::derive_seed(seed, 11, i));
      signals[i] = hr::add_noise(signals[i], noise_kind, noise_scale, rng);
    }
    hr::write_cplx(dir + "/signal_" + zero_pad(static_cast<int>(i), 3) + ".cplx", signals[i]);
  }
  std::printf("wrote %zu signal(s) to %s\n", signals.size(), dir.c_str());
  return 0;
}

int cmd_mask(const CommonArgs& common) {
  const hr::Config cfg = common.load();
  const std::string dir = out_dir(cfg);
  const int n = cfg.get_int("pattern.n");
  const hr::SamplingPattern pattern = pattern_from(cfg, n, cfg.get_seed("seed", 1));
  hr::write_mask(dir + "/pattern.mask", pattern);
  std::printf("wrote %s/pattern.mask (%d of %d)\n", dir.c_str(), pattern.size(), pattern.n);
  return 0;
}

int cmd_reconstruct(const CommonArgs& common, const std::string& input_flag,
                    const std::string& mask_flag) {
  hr::Config cfg = common.load();
  if (!input_flag.empty()) cfg.set("input.signal", input_flag);
  if (!mask_flag.empty()) cfg.set("input.mask", mask_flag);

  const std::string dir = out_dir(cfg);
  const hr::CplxData input = hr::read_cplx(cfg.get_string("input.signal"));

  // The undersampled axis: the vector itself, the indirect dimension of a
  // plane, or the phase-encode dimension of a coil volume.
  const int grid = input.rank() == 1 ? input.dims[0]
                  : input.rank() == 2 ? input.dims[1]
                                      : input.dims[1];
  hr::SamplingPattern pattern;
  if (cfg.has("input.mask")) {
    pattern = hr::read_mask(cfg.get_string("input.mask"));
    if (pattern.n != grid)
      throw hr::ConfigError("mask grid does not match the undersampled dimension");
  } else {
    pattern = pattern_from(cfg, grid, cfg.get_seed("seed", 1));
  }

  hr::RowSolverOptions options = solver_from(cfg);
  const std::unique_ptr<hr::PluginSolver> plugin = plugin_from(cfg);
  options.pipeline.plugin = plugin.get();
  options.threads = threads_of(cfg);
  if (cfg.get_bool("solver.auto_fidelity", false)) {
    const double rate = static_cast<double>(pattern.size()) / pattern.n;
    options.solver.lambda = hr::fidelity_ratio_for_rate(rate) * options.solver.beta;
    options.cs_lambda = hr::cs_lambda_for_rate(rate);
  }

  if (input.rank() == 3) {
    // Coil volumes route through the virtual-coil row pipeline.
    hr::KSpaceVolume volume;
    volume.coils = input.as_volume();
    hr::MriOptions mri;
    mri.rank_cap = cfg.get_int("mri.rank_cap", mri.rank_cap);
    mri.plugin = plugin.get();
    mri.threads = options.threads;
    const hr::MriResult result = hr::reconstruct_mri(volume, pattern, mri);
    hr::write_cplx(dir + "/recon.cplx", result.kspace.coils);
    hr::write_pgm16(dir + "/image.pgm", result.image);
  } else if (input.rank() == 2) {
    hr::Spectrum2D plane;
    plane.data = input.as_matrix();
    const hr::Spectrum2D rec = hr::reconstruct_nmr(plane, pattern, options);
    hr::write_cplx(dir + "/recon.cplx", rec.data);
  } else {
    const hr::cvec row = input.as_vector();
    if (options.choice == hr::SolverChoice::penalty || options.choice == hr::SolverChoice::admm) {
      // Single vectors keep the objective trace.
      const hr::cvec y = hr::apply_u(row, pattern);
      const hr::HankelShape shape = hr::default_shape(pattern.n);
      const hr::SolveResult result =
          options.choice == hr::SolverChoice::penalty
              ? hr::penalty_solve(y, pattern, options.solver, shape)
              : hr::admm_lrhmf_solve(y, pattern, options.solver, shape);
      hr::write_cplx(dir + "/recon.cplx", result.x);
      hr::write_trace_csv(dir + "/trace.csv", result.trace);
    } else if (options.choice == hr::SolverChoice::pipeline) {
      const hr::cvec y = hr::apply_u(row, pattern);
      const hr::PipelineResult result =
          hr::run_pipeline(y, pattern, options.pipeline, hr::default_shape(pattern.n));
      hr::write_cplx(dir + "/recon.cplx", result.x);
      hr::write_diagnostics_csv(dir + "/diagnostics.csv", result.diagnostics);
    } else {
      hr::write_cplx(dir + "/recon.cplx", hr::reconstruct_row(row, pattern, options));
    }
  }
  hr::write_mask(dir + "/pattern.mask", pattern);
  hr::write_text_file(dir + "/resolved.cfg",
                      "# " + std::string(hr::kVersionString) + "\n" + cfg.resolved_text());
  std::printf("wrote %s/recon.cplx\n", dir.c_str());
  return 0;
}

int cmd_benchmark(const CommonArgs& common) {
  const hr::Config cfg = common.load();
  const std::string dir = out_dir(cfg);

  hr::BenchmarkSpec spec;
  const std::string source = cfg.get_string("signal.source", "preset");
  if (source == "preset") {
    spec.signal = hr::preset_signal(cfg.get_string("signal.preset", "fivepeak-b"));
  } else if (source == "random") {
    spec.random_signals = true;
    spec.ranges = ranges_from(cfg);
  } else if (source == "file") {
    throw hr::ConfigError("benchmark needs a parametric signal source (preset or random)");
  } else {
    throw hr::ConfigError("unknown signal source: " + source);
  }
  spec.noise_kind = noise_kind_from(cfg);
  spec.noise_scale = cfg.get_double("noise.scale", 0.0);
  spec.pattern_kind =
      hr::pattern_kind_from_string(cfg.get_string("pattern.kind", "poisson-gap"));
  spec.center_fraction = cfg.get_double("pattern.center_fraction", 0.08);
  spec.rates = cfg.get_double_list("benchmark.rates");
  spec.trials = cfg.get_int("benchmark.trials", 1);
  spec.solver = solver_from(cfg);
  const std::unique_ptr<hr::PluginSolver> plugin = plugin_from(cfg);
  spec.solver.pipeline.plugin = plugin.get();
  spec.auto_fidelity = cfg.get_bool("solver.auto_fidelity", true);
  spec.seed = cfg.get_seed("seed", 1);
  spec.threads = threads_of(cfg);

  const hr::BenchmarkReport report = hr::run_benchmark(spec);
  const std::string prov = provenance(cfg);
  hr::write_text_file(dir + "/benchmark_trials.csv", hr::benchmark_trials_csv(report, prov));
  hr::write_text_file(dir + "/benchmark_summary.csv", hr::benchmark_summary_csv(report, prov));

  for (const hr::RateAggregate& a : report.aggregates)
    std::printf("rate %.3f  mean rlne %.5f  std %.5f\n", a.rate, a.mean_rlne, a.std_rlne);
  return 0;
}

int cmd_mismatch(const CommonArgs& common) {
  const hr::Config cfg = common.load();
  const std::string dir = out_dir(cfg);

  hr::MismatchSpec spec;
  spec.ranges = ranges_from(cfg);
  spec.pattern_kind =
      hr::pattern_kind_from_string(cfg.get_string("pattern.kind", "poisson-gap"));
  spec.center_fraction = cfg.get_double("pattern.center_fraction", 0.08);
  spec.reference_rate = cfg.get_double("mismatch.reference_rate", 0.25);
  spec.rates = cfg.get_double_list("mismatch.rates");
  spec.signals = cfg.get_int("mismatch.signals", 100);
  spec.log_scaled = cfg.get_bool("mismatch.log_scaled", false);
  spec.seed = cfg.get_seed("seed", 1);
  spec.dataset_label = cfg.get_string("mismatch.dataset", "exponential");

  const std::vector<hr::MismatchRow> rows = hr::run_mismatch(spec);
  hr::write_text_file(dir + "/mismatch.csv", hr::mismatch_csv(rows, provenance(cfg)));
  for (const hr::MismatchRow& r : rows)
    std::printf("rate %.3f  distance %.5f\n", r.rate, r.distance);
  return 0;
}

// Minimal CSV ingestion for the plot command: '#' lines are provenance, the
// first remaining line names the columns.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return static_cast<int>(i);
    throw hr::ConfigError("csv has no column named '" + name + "'");
  }
};

CsvTable read_csv(const std::string& path) {
  std::istringstream in(hr::read_text_file(path));
  CsvTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (table.columns.empty())
      table.columns = std::move(fields);
    else
      table.rows.push_back(std::move(fields));
  }
  if (table.columns.empty()) throw hr::IoError("csv has no header row: " + path);
  return table;
}

int cmd_plot(const CommonArgs& common) {
  const hr::Config cfg = common.load();
  const std::string dir = out_dir(cfg);
  const CsvTable table = read_csv(cfg.get_string("plot.input"));

  const int xcol = table.column(cfg.get_string("plot.x"));
  const int ycol = table.column(cfg.get_string("plot.y"));
  const int ecol = cfg.has("plot.yerr") ? table.column(cfg.get_string("plot.yerr")) : -1;

  hr::PlotSeries series;
  series.label = cfg.get_string("plot.label", cfg.get_string("plot.y"));
  for (const std::vector<std::string>& row : table.rows) {
    if (static_cast<int>(row.size()) <= std::max(xcol, ycol)) continue;
    try {
      const double x = std::stod(row[xcol]);
      const double y = std::stod(row[ycol]);
      double e = 0.0;
      if (ecol >= 0 && static_cast<int>(row.size()) > ecol) e = std::stod(row[ecol]);
      if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(e)) continue;
      series.x.push_back(x);
      series.y.push_back(y);
      if (ecol >= 0) series.yerr.push_back(e);
    } catch (const std::exception&) {
      // Non-numeric rows (for instance nan placeholders) are skipped.
    }
  }
  if (series.x.empty()) throw hr::ConfigError("no plottable rows in " + cfg.get_string("plot.input"));

  const std::string name = cfg.get_string("plot.output", "plot.svg");
  hr::write_svg_plot(dir + "/" + name, cfg.get_string("plot.title", series.label),
                     cfg.get_string("plot.x_label", cfg.get_string("plot.x")),
                     cfg.get_string("plot.y_label", cfg.get_string("plot.y")), {series},
                     cfg.get_bool("plot.scatter", false));
  std::printf("wrote %s/%s\n", dir.c_str(), name.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Undersampled exponential-signal reconstruction toolkit"};
  app.set_version_flag("--version", hr::kVersionString);
  app.require_subcommand(1);

  CommonArgs synth_args, mask_args, recon_args, bench_args, mismatch_args, plot_args;
  std::string input_flag, mask_flag;

  add_common(app.add_subcommand("synth", "Write synthetic signals as CPLX"), synth_args);
  add_common(app.add_subcommand("mask", "Write a sampling schedule as MASK"), mask_args);
  CLI::App* recon = app.add_subcommand("reconstruct", "Reconstruct a CPLX input");
  add_common(recon, recon_args);
  recon->add_option("--input", input_flag, "Input CPLX (overrides input.signal)");
  recon->add_option("--mask", mask_flag, "MASK file (overrides input.mask)");
  add_common(app.add_subcommand("benchmark", "Sweep rates x trials and report"), bench_args);
  add_common(app.add_subcommand("mismatch", "Sampling-mismatch distance table"), mismatch_args);
  add_common(app.add_subcommand("plot", "Render a report CSV as SVG"), plot_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand("synth")) return cmd_synth(synth_args);
    if (app.got_subcommand("mask")) return cmd_mask(mask_args);
    if (app.got_subcommand("reconstruct"))
      return cmd_reconstruct(recon_args, input_flag, mask_flag);
    if (app.got_subcommand("benchmark")) return cmd_benchmark(bench_args);
    if (app.got_subcommand("mismatch")) return cmd_mismatch(mismatch_args);
    if (app.got_subcommand("plot")) return cmd_plot(plot_args);
  } catch (const hr::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hr::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const hr::SolverDivergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
