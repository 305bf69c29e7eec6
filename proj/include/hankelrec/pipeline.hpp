#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hankelrec/factor.hpp"
#include "hankelrec/sampling.hpp"
#include "hankelrec/solvers.hpp"
#include "hankelrec/types.hpp"

namespace hankelrec {

// Per-block schedule: gamma_dl weights the data blend after the plugin
// stage, gamma after the optimizer stage; beta_p/beta_q control the factor
// updates of the optimizer stage.
struct BlockParams {
  double gamma_dl = 1.0;
  double gamma = 1.0;
  double beta_p = 100.0;
  double beta_q = 100.0;
  void validate() const;
};

// Stage orderings. "alternating" interleaves plugin and optimizer stages
// within every block; the others run single-stage blocks, either exclusively
// or one full sweep of each kind.
enum class PipelineMode { alternating, plugin_only, optimizer_first, plugin_first };

PipelineMode pipeline_mode_from_string(const std::string& name);
std::string to_string(PipelineMode mode);

// Read-only view handed to a plugin. hx is the Hankel lift of the current
// signal; input is the stage's matrix argument (H(x) Q for the P side,
// H(x)^H P for the Q side); companion is the opposite factor; history holds
// every prior iterate of the factor being corrected, oldest first, with the
// current iterate last.
struct PluginContext {
  const cmat& hx;
  const cmat& input;
  const cmat& companion;
  const std::vector<cmat>& history;
};

// Learned-stage seam. Implementations must be pure functions of the context:
// the pipeline owns all state and is the sole writer of the factors.
class PluginSolver {
 public:
  virtual ~PluginSolver() = default;
  virtual std::string name() const = 0;
  // Additive corrections; output shape must match the corrected factor.
  virtual cmat correction_p(const PluginContext& ctx) const = 0;
  virtual cmat correction_q(const PluginContext& ctx) const = 0;
};

// "zero" (identity stage) or "svt-shrink:<theta>" (moves the factors to the
// balanced factorization of the soft-thresholded truncated SVD of H(x)).
// Unknown names throw ConfigError.
std::unique_ptr<PluginSolver> make_plugin(const std::string& spec);
std::vector<std::string> builtin_plugins();

// Shared do-nothing plugin instance used whenever none is configured.
const PluginSolver& zero_plugin();

struct PipelineConfig {
  std::vector<BlockParams> blocks;
  int rank_cap = 20;
  PipelineMode mode = PipelineMode::alternating;
  const PluginSolver* plugin = nullptr;  // null means the zero plugin
  void validate() const;
};

// Bundled block schedules: ten blocks for 1-D exponential signals, five for
// the multi-coil rows.
std::vector<BlockParams> default_blocks_exponential();
std::vector<BlockParams> default_blocks_mri();

struct PipelineState {
  cvec x;
  FactorPair factors;
  std::vector<cmat> history_p;  // seeded with the initial P, one entry appended per stage
  std::vector<cmat> history_q;
};

// x = U*y, factors from the truncated SVD of its lift, histories seeded.
PipelineState pipeline_init(const cvec& y, const SamplingPattern& pattern,
                            const HankelShape& shape, int rank_cap);

// Plugin stage: P <- correction + P, Q <- correction + Q (the Q-side input
// uses the already-corrected P), then the gamma_dl data blend.
void plugin_stage(PipelineState& state, double gamma_dl, const PluginSolver& plugin,
                  const cvec& zero_filled_y, const SamplingPattern& pattern,
                  const HankelShape& shape);

// Optimizer stage: exact ridge factor updates on the lift of the current
// signal, then the gamma data blend.
void optimizer_stage(PipelineState& state, double beta_p, double beta_q, double gamma,
                     const cvec& zero_filled_y, const SamplingPattern& pattern,
                     const HankelShape& shape);

// One alternating block: plugin stage followed by optimizer stage.
void run_block(PipelineState& state, const BlockParams& params, const PluginSolver& plugin,
               const cvec& y, const SamplingPattern& pattern, const HankelShape& shape);

// Per-stage record kept for diagnostics and loss evaluation. x is the signal
// after the stage's data blend; model is the pre-blend signal induced by the
// stage's factors. rlne is NaN when no ground truth was supplied.
struct StageDiag {
  int block = 0;
  std::string stage;  // "plugin" or "optimizer"
  double rlne = 0.0;
  int effective_rank = 0;
  double nuclear_norm = 0.0;
  cvec x;
  cvec model;
};

struct PipelineResult {
  cvec x;
  std::vector<StageDiag> diagnostics;
};

PipelineResult run_pipeline(const cvec& y, const SamplingPattern& pattern,
                            const PipelineConfig& config, const HankelShape& shape,
                            const cvec* truth = nullptr);

// Squared-error training loss per stage:
//   L = ||x_stage - truth||^2 + alpha ||model_stage - truth||^2.
struct LossRow {
  int block = 0;
  std::string stage;
  double loss = 0.0;
};

std::vector<LossRow> compute_losses(const std::vector<StageDiag>& diagnostics, const cvec& truth,
                                    double alpha = 1e-2);

// Weighted totals over the loss rows. Greedy training weights every stage at
// 1; the non-greedy alternative weights only the final stage.
double loss_total_greedy(const std::vector<LossRow>& rows);
double loss_total_final_stage(const std::vector<LossRow>& rows);
double loss_total_weighted(const std::vector<LossRow>& rows, const std::vector<double>& weights);

}  // namespace hankelrec
