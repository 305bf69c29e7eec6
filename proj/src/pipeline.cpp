#include "hankelrec/pipeline.hpp"

#include <cmath>
#include <limits>

#include "hankelrec/metrics.hpp"

namespace hankelrec {

void BlockParams::validate() const {
  if (gamma_dl <= 0.0 || gamma <= 0.0 || beta_p <= 0.0 || beta_q <= 0.0)
    throw ConfigError("block parameters must be positive");
}

PipelineMode pipeline_mode_from_string(const std::string& name) {
  if (name == "alternating") return PipelineMode::alternating;
  if (name == "plugin-only") return PipelineMode::plugin_only;
  if (name == "optimizer-first") return PipelineMode::optimizer_first;
  if (name == "plugin-first") return PipelineMode::plugin_first;
  throw ConfigError("unknown pipeline mode: " + name);
}

std::string to_string(PipelineMode mode) {
  switch (mode) {
    case PipelineMode::alternating: return "alternating";
    case PipelineMode::plugin_only: return "plugin-only";
    case PipelineMode::optimizer_first: return "optimizer-first";
    case PipelineMode::plugin_first: return "plugin-first";
  }
  throw ConfigError("invalid pipeline mode");
}

namespace {

class ZeroPlugin final : public PluginSolver {
 public:
  std::string name() const override { return "zero"; }
  cmat correction_p(const PluginContext& ctx) const override {
    return cmat::Zero(ctx.history.back().rows(), ctx.history.back().cols());
  }
  cmat correction_q(const PluginContext& ctx) const override {
    return cmat::Zero(ctx.history.back().rows(), ctx.history.back().cols());
  }
};

// Moves the factor pair to the balanced factorization of the soft-thresholded
// truncated SVD of the current lift. theta = 0 projects onto the best rank-R
// approximation; large theta drives the product toward zero.
class SvtShrinkPlugin final : public PluginSolver {
 public:
  explicit SvtShrinkPlugin(double theta) : theta_(theta) {
    if (theta < 0.0) throw ConfigError("svt-shrink theta must be non-negative");
  }
  std::string name() const override { return "svt-shrink:" + std::to_string(theta_); }
  cmat correction_p(const PluginContext& ctx) const override {
    const cmat& current = ctx.history.back();
    const int r = static_cast<int>(current.cols());
    return balanced_factors(ctx.hx, r, theta_).p - current;
  }
  cmat correction_q(const PluginContext& ctx) const override {
    const cmat& current = ctx.history.back();
    const int r = static_cast<int>(current.cols());
    return balanced_factors(ctx.hx, r, theta_).q - current;
  }

 private:
  double theta_;
};

}  // namespace

const PluginSolver& zero_plugin() {
  static const ZeroPlugin plugin;
  return plugin;
}

std::unique_ptr<PluginSolver> make_plugin(const std::string& spec) {
  if (spec == "zero" || spec.empty()) return std::make_unique<ZeroPlugin>();
  const std::string prefix = "svt-shrink";
  if (spec.rfind(prefix, 0) == 0) {
    double theta = 0.0;
    if (spec.size() > prefix.size()) {
      if (spec[prefix.size()] != ':') throw ConfigError("unknown plugin: " + spec);
      try {
        theta = std::stod(spec.substr(prefix.size() + 1));
      } catch (const std::exception&) {
        throw ConfigError("bad svt-shrink theta in: " + spec);
      }
    }
    return std::make_unique<SvtShrinkPlugin>(theta);
  }
  throw ConfigError("unknown plugin: " + spec);
}

std::vector<std::string> builtin_plugins() { return {"zero", "svt-shrink:<theta>"}; }

void PipelineConfig::validate() const {
  if (blocks.empty()) throw ConfigError("pipeline needs at least one block");
  if (rank_cap <= 0) throw ConfigError("rank cap must be positive");
  for (const BlockParams& b : blocks) b.validate();
}

std::vector<BlockParams> default_blocks_exponential() {
  return {
      {5.2e5, 1.9e5, 96.0, 87.6},  {6.7e4, 1.3e5, 98.4, 97.0},  {6.7e4, 1.6e0, 98.5, 98.9},
      {3.7e1, 5.4e-1, 99.5, 95.7}, {4.4e0, 2.6e-1, 99.0, 102.1}, {4.0e0, 1.4e-1, 99.2, 102.7},
      {2.3e0, 1.1e-1, 98.5, 105.7}, {2.0e0, 9.2e-2, 99.4, 105.0}, {1.2e0, 8.9e-2, 100.0, 107.6},
      {4.6e-1, 9.5e-2, 98.4, 109.3},
  };
}

std::vector<BlockParams> default_blocks_mri() {
  return {
      {1.4e5, 2.1e5, 92.3, 75.7}, {4.1e5, 1.1e5, 100.5, 75.4}, {3.2e5, 2.4e5, 101.9, 77.7},
      {7.7e3, 2.0e5, 103.0, 79.2}, {6.4e4, 3.4e5, 98.1, 86.0},
  };
}

PipelineState pipeline_init(const cvec& y, const SamplingPattern& pattern,
                            const HankelShape& shape, int rank_cap) {
  if (pattern.n != shape.length()) throw ConfigError("pattern grid does not match hankel shape");
  PipelineState state;
  state.x = apply_u_star(y, pattern);
  state.factors = init_factors(state.x, shape, rank_cap);
  state.history_p = {state.factors.p};
  state.history_q = {state.factors.q};
  return state;
}

namespace {

void check_stage_finite(const PipelineState& state, const char* stage) {
  if (!state.x.allFinite() || !state.factors.p.allFinite() || !state.factors.q.allFinite())
    throw SolverDivergence(std::string("non-finite iterate in pipeline ") + stage);
}

void apply_plugin_correction(cmat& factor, const cmat& correction, const char* side) {
  if (correction.rows() != factor.rows() || correction.cols() != factor.cols())
    throw ConfigError(std::string("plugin correction shape mismatch on ") + side);
  factor += correction;
}

}  // namespace

void plugin_stage(PipelineState& state, double gamma_dl, const PluginSolver& plugin,
                  const cvec& zero_filled_y, const SamplingPattern& pattern,
                  const HankelShape& shape) {
  const cmat hx = hankel(state.x, shape);
  const cmat input_p = hx * state.factors.q;
  apply_plugin_correction(
      state.factors.p,
      plugin.correction_p({hx, input_p, state.factors.q, state.history_p}), "P");
  const cmat input_q = hx.adjoint() * state.factors.p;
  apply_plugin_correction(
      state.factors.q,
      plugin.correction_q({hx, input_q, state.factors.p, state.history_q}), "Q");
  state.x = data_consistency(zero_filled_y, hankel_adjoint_avg(state.factors.product()), gamma_dl,
                             pattern);
  state.history_p.push_back(state.factors.p);
  state.history_q.push_back(state.factors.q);
  check_stage_finite(state, "plugin stage");
}

void optimizer_stage(PipelineState& state, double beta_p, double beta_q, double gamma,
                     const cvec& zero_filled_y, const SamplingPattern& pattern,
                     const HankelShape& shape) {
  const cmat hx = hankel(state.x, shape);
  state.factors.p = update_p(hx, state.factors.q, beta_p);
  state.factors.q = update_q(hx, state.factors.p, beta_q);
  state.x = data_consistency(zero_filled_y, hankel_adjoint_avg(state.factors.product()), gamma,
                             pattern);
  state.history_p.push_back(state.factors.p);
  state.history_q.push_back(state.factors.q);
  check_stage_finite(state, "optimizer stage");
}

void run_block(PipelineState& state, const BlockParams& params, const PluginSolver& plugin,
               const cvec& y, const SamplingPattern& pattern, const HankelShape& shape) {
  params.validate();
  const cvec uy = apply_u_star(y, pattern);
  plugin_stage(state, params.gamma_dl, plugin, uy, pattern, shape);
  optimizer_stage(state, params.beta_p, params.beta_q, params.gamma, uy, pattern, shape);
}

namespace {

StageDiag make_stage_diag(int block, const char* stage, const PipelineState& state,
                          const HankelShape& shape, const cvec* truth) {
  StageDiag d;
  d.block = block;
  d.stage = stage;
  d.x = state.x;
  d.model = hankel_adjoint_avg(state.factors.product());
  d.rlne = truth ? rlne(*truth, state.x) : std::numeric_limits<double>::quiet_NaN();
  d.effective_rank = effective_rank(state.x, shape);
  d.nuclear_norm = nuclear_norm(state.x, shape);
  return d;
}

}  // namespace

PipelineResult run_pipeline(const cvec& y, const SamplingPattern& pattern,
                            const PipelineConfig& config, const HankelShape& shape,
                            const cvec* truth) {
  config.validate();
  const PluginSolver& plugin = config.plugin ? *config.plugin : zero_plugin();
  const cvec uy = apply_u_star(y, pattern);
  PipelineState state = pipeline_init(y, pattern, shape, config.rank_cap);
  PipelineResult result;
  const int k = static_cast<int>(config.blocks.size());

  auto do_plugin = [&](int block_index, int label) {
    const BlockParams& b = config.blocks[block_index];
    b.validate();
    plugin_stage(state, b.gamma_dl, plugin, uy, pattern, shape);
    result.diagnostics.push_back(make_stage_diag(label, "plugin", state, shape, truth));
  };
  auto do_optimizer = [&](int block_index, int label) {
    const BlockParams& b = config.blocks[block_index];
    b.validate();
    optimizer_stage(state, b.beta_p, b.beta_q, b.gamma, uy, pattern, shape);
    result.diagnostics.push_back(make_stage_diag(label, "optimizer", state, shape, truth));
  };

  switch (config.mode) {
    case PipelineMode::alternating:
      for (int i = 0; i < k; ++i) {
        do_plugin(i, i + 1);
        do_optimizer(i, i + 1);
      }
      break;
    case PipelineMode::plugin_only:
      for (int i = 0; i < k; ++i) do_plugin(i, i + 1);
      break;
    case PipelineMode::optimizer_first:
      for (int i = 0; i < k; ++i) do_optimizer(i, i + 1);
      for (int i = 0; i < k; ++i) do_plugin(i, k + i + 1);
      break;
    case PipelineMode::plugin_first:
      for (int i = 0; i < k; ++i) do_plugin(i, i + 1);
      for (int i = 0; i < k; ++i) do_optimizer(i, k + i + 1);
      break;
  }
  result.x = state.x;
  return result;
}

std::vector<LossRow> compute_losses(const std::vector<StageDiag>& diagnostics, const cvec& truth,
                                    double alpha) {
  if (alpha < 0.0) throw ConfigError("alpha must be non-negative");
  std::vector<LossRow> rows;
  for (const StageDiag& d : diagnostics) {
    if (d.x.size() != truth.size() || d.model.size() != truth.size())
      throw ConfigError("diagnostics do not match ground truth length");
    LossRow row;
    row.block = d.block;
    row.stage = d.stage;
    row.loss = (d.x - truth).squaredNorm() + alpha * (d.model - truth).squaredNorm();
    rows.push_back(row);
  }
  return rows;
}

double loss_total_greedy(const std::vector<LossRow>& rows) {
  double total = 0.0;
  for (const LossRow& r : rows) total += r.loss;
  return total;
}

double loss_total_final_stage(const std::vector<LossRow>& rows) {
  if (rows.empty()) throw ConfigError("empty loss table");
  return rows.back().loss;
}

double loss_total_weighted(const std::vector<LossRow>& rows, const std::vector<double>& weights) {
  if (rows.size() != weights.size()) throw ConfigError("weight count does not match loss rows");
  double total = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) total += weights[i] * rows[i].loss;
  return total;
}

}  // namespace hankelrec
