// Python bindings for the reconstruction core. Heavy solves release the GIL;
// plugin callbacks re-acquire it through the pybind override machinery, so a
// Python-implemented correction stage works from any of the entry points.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "hankelrec/benchmark.hpp"
#include "hankelrec/factor.hpp"
#include "hankelrec/hankel.hpp"
#include "hankelrec/metrics.hpp"
#include "hankelrec/mri.hpp"
#include "hankelrec/nmr.hpp"
#include "hankelrec/pipeline.hpp"
#include "hankelrec/rng.hpp"
#include "hankelrec/sampling.hpp"
#include "hankelrec/signal.hpp"
#include "hankelrec/solvers.hpp"
#include "hankelrec/version.hpp"

namespace py = pybind11;
using namespace hankelrec;

namespace {

// Lets Python subclasses implement the correction seam.
class PyPluginSolver : public PluginSolver {
 public:
  using PluginSolver::PluginSolver;
  std::string name() const override {
    PYBIND11_OVERRIDE_PURE(std::string, PluginSolver, name);
  }
  cmat correction_p(const PluginContext& ctx) const override {
    PYBIND11_OVERRIDE_PURE(cmat, PluginSolver, correction_p, ctx);
  }
  cmat correction_q(const PluginContext& ctx) const override {
    PYBIND11_OVERRIDE_PURE(cmat, PluginSolver, correction_q, ctx);
  }
};

PipelineConfig make_pipeline_config(const std::vector<BlockParams>& blocks, int rank_cap,
                                    const std::string& mode, const PluginSolver* plugin) {
  PipelineConfig cfg;
  cfg.blocks = blocks;
  cfg.rank_cap = rank_cap;
  cfg.mode = pipeline_mode_from_string(mode);
  cfg.plugin = plugin;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(hankelrec, m) {
  m.doc() = "Low-rank Hankel reconstruction of undersampled exponential signals";
  m.attr("__version__") = kVersion;
  m.attr("version_string") = kVersionString;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<SolverDivergence>(m, "SolverDivergence", PyExc_RuntimeError);

  // -- random source --------------------------------------------------------
  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform", py::overload_cast<>(&Rng::uniform))
      .def("uniform_int", &Rng::uniform_int, py::arg("n"))
      .def("normal", &Rng::normal);
  m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("stream"), py::arg("substream"));

  // -- signal models --------------------------------------------------------
  py::class_<Peak>(m, "Peak")
      .def(py::init([](double amplitude, double damping, double frequency, double phase) {
             return Peak{amplitude, damping, frequency, phase};
           }),
           py::arg("amplitude") = 1.0, py::arg("damping") = 100.0, py::arg("frequency") = 0.0,
           py::arg("phase") = 0.0)
      .def_readwrite("amplitude", &Peak::amplitude)
      .def_readwrite("damping", &Peak::damping)
      .def_readwrite("frequency", &Peak::frequency)
      .def_readwrite("phase", &Peak::phase);

  py::class_<ExponentialModel>(m, "ExponentialModel")
      .def(py::init<>())
      .def_readwrite("peaks", &ExponentialModel::peaks)
      .def_readwrite("sample_interval", &ExponentialModel::sample_interval)
      .def_readwrite("length", &ExponentialModel::length);

  py::class_<TrainingRanges>(m, "TrainingRanges")
      .def(py::init<>())
      .def_readwrite("peaks_min", &TrainingRanges::peaks_min)
      .def_readwrite("peaks_max", &TrainingRanges::peaks_max)
      .def_readwrite("amplitude_min", &TrainingRanges::amplitude_min)
      .def_readwrite("amplitude_max", &TrainingRanges::amplitude_max)
      .def_readwrite("damping_min", &TrainingRanges::damping_min)
      .def_readwrite("damping_max", &TrainingRanges::damping_max)
      .def_readwrite("frequency_min", &TrainingRanges::frequency_min)
      .def_readwrite("frequency_max", &TrainingRanges::frequency_max)
      .def_readwrite("phase_min", &TrainingRanges::phase_min)
      .def_readwrite("phase_max", &TrainingRanges::phase_max)
      .def_readwrite("noise_max", &TrainingRanges::noise_max)
      .def_readwrite("length", &TrainingRanges::length);

  m.def("synthesize", &synthesize, py::arg("model"));
  m.def("fivepeak_a", &fivepeak_a);
  m.def("fivepeak_b", &fivepeak_b);
  m.def("preset_signal", &preset_signal, py::arg("name"));
  m.def("sample_model", &sample_model, py::arg("ranges"), py::arg("rng"));
  m.def("sample_noise_scale", &sample_noise_scale, py::arg("ranges"), py::arg("rng"));
  m.def(
      "add_noise",
      [](const cvec& x, const std::string& kind, double scale, Rng& rng) {
        return add_noise(x, noise_kind_from_string(kind), scale, rng);
      },
      py::arg("x"), py::arg("kind"), py::arg("scale"), py::arg("rng"));

  // -- sampling schedules ----------------------------------------------------
  py::class_<SamplingPattern>(m, "SamplingPattern")
      .def_readonly("indices", &SamplingPattern::indices)
      .def_readonly("n", &SamplingPattern::n)
      .def_readonly("seed", &SamplingPattern::seed)
      .def_property_readonly("kind",
                             [](const SamplingPattern& p) { return to_string(p.kind); })
      .def_property_readonly("size", &SamplingPattern::size)
      .def("rate", &SamplingPattern::rate);

  m.def(
      "make_pattern",
      [](const std::string& kind, int n, int m_, double center_fraction, std::uint64_t seed) {
        return make_pattern(pattern_kind_from_string(kind), n, m_, center_fraction, seed);
      },
      py::arg("kind"), py::arg("n"), py::arg("m"), py::arg("center_fraction") = 0.08,
      py::arg("seed") = 0);
  m.def("poisson_gap", &poisson_gap, py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def("full_pattern", &full_pattern, py::arg("n"));
  m.def("apply_u", &apply_u, py::arg("x"), py::arg("pattern"));
  m.def("apply_u_star", &apply_u_star, py::arg("y"), py::arg("pattern"));

  // -- Hankel algebra ----------------------------------------------------------
  py::class_<HankelShape>(m, "HankelShape")
      .def(py::init([](int n1, int n2) { return HankelShape{n1, n2}; }), py::arg("n1"),
           py::arg("n2"))
      .def_readwrite("n1", &HankelShape::n1)
      .def_readwrite("n2", &HankelShape::n2)
      .def("length", &HankelShape::length);

  m.def("default_shape", &default_shape, py::arg("length"));
  m.def("hankel", &hankel, py::arg("x"), py::arg("shape"));
  m.def("hankel_adjoint_avg", &hankel_adjoint_avg, py::arg("matrix"));
  m.def("hankel_adjoint_sum", &hankel_adjoint_sum, py::arg("matrix"));
  m.def("flip_conj", &flip_conj, py::arg("x"));
  m.def(
      "hankel_vc",
      [](const cmat& data, const HankelShape& shape) {
        return hankel_vc(CoilBlock{data, shape});
      },
      py::arg("data"), py::arg("shape"));
  m.def(
      "hankel_vc_adjoint",
      [](const cmat& lifted, const HankelShape& shape, int channels) {
        return hankel_vc_adjoint(lifted, shape, channels).data;
      },
      py::arg("lifted"), py::arg("shape"), py::arg("channels"));

  // -- factorization ------------------------------------------------------------
  py::class_<FactorPair>(m, "FactorPair")
      .def(py::init<>())
      .def_readwrite("p", &FactorPair::p)
      .def_readwrite("q", &FactorPair::q)
      .def("product", &FactorPair::product)
      .def("cost", &FactorPair::cost);
  m.def("balanced_factors", &balanced_factors, py::arg("matrix"), py::arg("rank_cap"),
        py::arg("shrink") = 0.0);

  // -- solvers -------------------------------------------------------------------
  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("lambda_", &SolverConfig::lambda)
      .def_readwrite("beta", &SolverConfig::beta)
      .def_readwrite("rank_cap", &SolverConfig::rank_cap)
      .def_readwrite("max_iters", &SolverConfig::max_iters)
      .def_readwrite("tol", &SolverConfig::tol)
      .def("gamma", &SolverConfig::gamma);
  m.def("solver_config_for_rate", &solver_config_for_rate, py::arg("rate"),
        py::arg("beta") = 100.0);
  m.def("fidelity_ratio_for_rate", &fidelity_ratio_for_rate, py::arg("rate"));
  m.def("cs_lambda_for_rate", &cs_lambda_for_rate, py::arg("rate"));

  py::class_<TraceRow>(m, "TraceRow")
      .def_readonly("iter", &TraceRow::iter)
      .def_readonly("objective", &TraceRow::objective)
      .def_readonly("fidelity", &TraceRow::fidelity)
      .def_readonly("penalty", &TraceRow::penalty)
      .def_readonly("nucproxy", &TraceRow::nucproxy)
      .def_readonly("seconds", &TraceRow::seconds);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("x", &SolveResult::x)
      .def_readonly("trace", &SolveResult::trace)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("primal_residual", &SolveResult::primal_residual);

  m.def("data_consistency", &data_consistency, py::arg("zero_filled_y"), py::arg("x_tilde"),
        py::arg("gamma"), py::arg("pattern"));
  m.def("penalty_solve", &penalty_solve, py::arg("y"), py::arg("pattern"), py::arg("config"),
        py::arg("shape"), py::call_guard<py::gil_scoped_release>());
  m.def("admm_lrhmf_solve", &admm_lrhmf_solve, py::arg("y"), py::arg("pattern"),
        py::arg("config"), py::arg("shape"), py::arg("multiplier_enabled") = true,
        py::call_guard<py::gil_scoped_release>());
  m.def("svt_nuclear_solve", &svt_nuclear_solve, py::arg("y"), py::arg("pattern"),
        py::arg("lambda_"), py::arg("iters"), py::arg("shape"), py::arg("threshold") = 1.0,
        py::call_guard<py::gil_scoped_release>());
  m.def("cs_solve", &cs_solve, py::arg("y"), py::arg("pattern"), py::arg("lambda_"),
        py::arg("iters"), py::call_guard<py::gil_scoped_release>());

  // -- block pipeline ---------------------------------------------------------------
  py::class_<BlockParams>(m, "BlockParams")
      .def(py::init([](double gamma_dl, double gamma, double beta_p, double beta_q) {
             return BlockParams{gamma_dl, gamma, beta_p, beta_q};
           }),
           py::arg("gamma_dl") = 1.0, py::arg("gamma") = 1.0, py::arg("beta_p") = 100.0,
           py::arg("beta_q") = 100.0)
      .def_readwrite("gamma_dl", &BlockParams::gamma_dl)
      .def_readwrite("gamma", &BlockParams::gamma)
      .def_readwrite("beta_p", &BlockParams::beta_p)
      .def_readwrite("beta_q", &BlockParams::beta_q);
  m.def("default_blocks_exponential", &default_blocks_exponential);
  m.def("default_blocks_mri", &default_blocks_mri);

  py::class_<PluginContext>(m, "PluginContext")
      .def_property_readonly("hx", [](const PluginContext& c) { return c.hx; })
      .def_property_readonly("input", [](const PluginContext& c) { return c.input; })
      .def_property_readonly("companion", [](const PluginContext& c) { return c.companion; })
      .def_property_readonly("history", [](const PluginContext& c) { return c.history; });

  py::class_<PluginSolver, PyPluginSolver>(m, "PluginSolver")
      .def(py::init<>())
      .def("name", &PluginSolver::name)
      .def("correction_p", &PluginSolver::correction_p, py::arg("ctx"))
      .def("correction_q", &PluginSolver::correction_q, py::arg("ctx"));
  m.def("make_plugin", &make_plugin, py::arg("spec"));
  m.def("builtin_plugins", &builtin_plugins);

  py::class_<StageDiag>(m, "StageDiag")
      .def_readonly("block", &StageDiag::block)
      .def_readonly("stage", &StageDiag::stage)
      .def_readonly("rlne", &StageDiag::rlne)
      .def_readonly("effective_rank", &StageDiag::effective_rank)
      .def_readonly("nuclear_norm", &StageDiag::nuclear_norm)
      .def_readonly("x", &StageDiag::x)
      .def_readonly("model", &StageDiag::model);

  py::class_<PipelineResult>(m, "PipelineResult")
      .def_readonly("x", &PipelineResult::x)
      .def_readonly("diagnostics", &PipelineResult::diagnostics);

  m.def(
      "run_pipeline",
      [](const cvec& y, const SamplingPattern& pattern, const std::vector<BlockParams>& blocks,
         int rank_cap, const std::string& mode, const PluginSolver* plugin,
         std::optional<HankelShape> shape, std::optional<cvec> truth) {
        const PipelineConfig cfg = make_pipeline_config(blocks, rank_cap, mode, plugin);
        const HankelShape s = shape ? *shape : default_shape(pattern.n);
        py::gil_scoped_release release;
        return run_pipeline(y, pattern, cfg, s, truth ? &*truth : nullptr);
      },
      py::arg("y"), py::arg("pattern"), py::arg("blocks"), py::arg("rank_cap") = 20,
      py::arg("mode") = "alternating", py::arg("plugin") = nullptr,
      py::arg("shape") = std::nullopt, py::arg("truth") = std::nullopt);

  py::class_<LossRow>(m, "LossRow")
      .def_readonly("block", &LossRow::block)
      .def_readonly("stage", &LossRow::stage)
      .def_readonly("loss", &LossRow::loss);
  m.def("compute_losses", &compute_losses, py::arg("diagnostics"), py::arg("truth"),
        py::arg("alpha") = 1e-2);
  m.def("loss_total_greedy", &loss_total_greedy, py::arg("rows"));
  m.def("loss_total_final_stage", &loss_total_final_stage, py::arg("rows"));

  // -- row reconstruction entry points --------------------------------------------
  py::class_<RowSolverOptions>(m, "RowSolverOptions")
      .def(py::init<>())
      .def_property(
          "solver_name",
          [](const RowSolverOptions& o) { return to_string(o.choice); },
          [](RowSolverOptions& o, const std::string& name) {
            o.choice = solver_choice_from_string(name);
          })
      .def_readwrite("solver", &RowSolverOptions::solver)
      .def_readwrite("cs_lambda", &RowSolverOptions::cs_lambda)
      .def_readwrite("cs_iters", &RowSolverOptions::cs_iters)
      .def_readwrite("svt_lambda", &RowSolverOptions::svt_lambda)
      .def_readwrite("svt_iters", &RowSolverOptions::svt_iters)
      .def_readwrite("threads", &RowSolverOptions::threads);

  m.def(
      "reconstruct_row",
      [](const cvec& row, const SamplingPattern& pattern, RowSolverOptions options,
         const std::vector<BlockParams>& blocks, int rank_cap, const std::string& mode,
         const PluginSolver* plugin) {
        options.pipeline = make_pipeline_config(blocks, rank_cap, mode, plugin);
        py::gil_scoped_release release;
        return reconstruct_row(row, pattern, options);
      },
      py::arg("row"), py::arg("pattern"), py::arg("options") = RowSolverOptions(),
      py::arg("blocks") = default_blocks_exponential(), py::arg("rank_cap") = 20,
      py::arg("mode") = "alternating", py::arg("plugin") = nullptr);

  m.def(
      "reconstruct_plane",
      [](const cmat& data, const SamplingPattern& pattern, RowSolverOptions options,
         const std::vector<BlockParams>& blocks, int rank_cap, const std::string& mode,
         const PluginSolver* plugin) {
        options.pipeline = make_pipeline_config(blocks, rank_cap, mode, plugin);
        Spectrum2D plane;
        plane.data = data;
        py::gil_scoped_release release;
        return reconstruct_nmr(plane, pattern, options).data;
      },
      py::arg("data"), py::arg("pattern"), py::arg("options") = RowSolverOptions(),
      py::arg("blocks") = default_blocks_exponential(), py::arg("rank_cap") = 20,
      py::arg("mode") = "alternating", py::arg("plugin") = nullptr);

  // -- multi-coil imaging -------------------------------------------------------------
  py::class_<MriPhantom>(m, "MriPhantom")
      .def_readonly("image", &MriPhantom::image)
      .def_readonly("coil_images", &MriPhantom::coil_images);
  m.def("synthetic_phantom", &synthetic_phantom, py::arg("a"), py::arg("z"), py::arg("coils"));
  m.def("rsos_image", &rsos_image, py::arg("coil_images"));
  m.def(
      "kspace_from_images",
      [](const std::vector<cmat>& coil_images) {
        return kspace_from_images(coil_images).coils;
      },
      py::arg("coil_images"));
  m.def(
      "images_from_kspace",
      [](const std::vector<cmat>& coils) {
        KSpaceVolume volume;
        volume.coils = coils;
        return images_from_kspace(volume);
      },
      py::arg("coils"));
  m.def(
      "reconstruct_mri",
      [](const std::vector<cmat>& coils, const SamplingPattern& pattern,
         const std::vector<BlockParams>& blocks, int rank_cap, const PluginSolver* plugin,
         int threads) {
        KSpaceVolume volume;
        volume.coils = coils;
        MriOptions options;
        options.blocks = blocks;
        options.rank_cap = rank_cap;
        options.plugin = plugin;
        options.threads = threads;
        py::gil_scoped_release release;
        const MriResult result = reconstruct_mri(volume, pattern, options);
        return std::make_pair(result.kspace.coils, result.image);
      },
      py::arg("coils"), py::arg("pattern"), py::arg("blocks") = default_blocks_mri(),
      py::arg("rank_cap") = 40, py::arg("plugin") = nullptr, py::arg("threads") = 1);

  // -- metrics ---------------------------------------------------------------------------
  m.def("rlne", py::overload_cast<const cvec&, const cvec&>(&rlne), py::arg("truth"),
        py::arg("estimate"));
  m.def("rlne_image", py::overload_cast<const rmat&, const rmat&>(&rlne), py::arg("truth"),
        py::arg("estimate"));
  m.def("pearson_r2", &pearson_r2, py::arg("c"), py::arg("d"));
  m.def("effective_rank", &effective_rank, py::arg("x"), py::arg("shape"),
        py::arg("threshold") = 1e-3);
  m.def("effective_rank_matrix", &effective_rank_matrix, py::arg("matrix"),
        py::arg("threshold") = 1e-3);
  m.def("nuclear_norm", &nuclear_norm, py::arg("x"), py::arg("shape"));
  m.def("detect_peaks", &detect_peaks, py::arg("magnitude"));
  m.def("peak_rlne", &peak_rlne, py::arg("truth_spectrum"), py::arg("estimate_spectrum"));
}
