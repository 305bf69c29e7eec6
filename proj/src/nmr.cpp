#include "hankelrec/nmr.hpp"

#include "hankelrec/hankel.hpp"
#include "hankelrec/threads.hpp"

namespace hankelrec {

SolverChoice solver_choice_from_string(const std::string& name) {
  if (name == "penalty") return SolverChoice::penalty;
  if (name == "admm") return SolverChoice::admm;
  if (name == "svt") return SolverChoice::svt;
  if (name == "cs") return SolverChoice::cs;
  if (name == "pipeline") return SolverChoice::pipeline;
  throw ConfigError("unknown solver: " + name);
}

std::string to_string(SolverChoice choice) {
  switch (choice) {
    case SolverChoice::penalty: return "penalty";
    case SolverChoice::admm: return "admm";
    case SolverChoice::svt: return "svt";
    case SolverChoice::cs: return "cs";
    case SolverChoice::pipeline: return "pipeline";
  }
  throw ConfigError("invalid solver choice");
}

cvec reconstruct_row(const cvec& row, const SamplingPattern& pattern,
                     const RowSolverOptions& options) {
  if (row.size() != pattern.n) throw ConfigError("row length does not match pattern grid");
  const cvec y = apply_u(row, pattern);
  const HankelShape shape = default_shape(pattern.n);
  switch (options.choice) {
    case SolverChoice::penalty: return penalty_solve(y, pattern, options.solver, shape).x;
    case SolverChoice::admm: return admm_lrhmf_solve(y, pattern, options.solver, shape).x;
    case SolverChoice::svt:
      return svt_nuclear_solve(y, pattern, options.svt_lambda, options.svt_iters, shape);
    case SolverChoice::cs: return cs_solve(y, pattern, options.cs_lambda, options.cs_iters);
    case SolverChoice::pipeline: return run_pipeline(y, pattern, options.pipeline, shape).x;
  }
  throw ConfigError("invalid solver choice");
}

Spectrum2D reconstruct_nmr(const Spectrum2D& input, const SamplingPattern& pattern,
                           const RowSolverOptions& options) {
  if (input.direct_dim() < 1 || input.indirect_dim() < 1)
    throw ConfigError("spectrum dimensions must be at least 1");
  if (input.indirect_dim() != pattern.n)
    throw ConfigError("pattern length does not match indirect dimension");
  Spectrum2D out;
  out.data.resize(input.data.rows(), input.data.cols());
  parallel_for(input.direct_dim(), options.threads, [&](int r) {
    const cvec row = input.data.row(r).transpose();
    out.data.row(r) = reconstruct_row(row, pattern, options).transpose();
  });
  return out;
}

}  // namespace hankelrec
