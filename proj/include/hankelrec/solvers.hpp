#pragma once

#include <vector>

#include "hankelrec/factor.hpp"
#include "hankelrec/hankel.hpp"
#include "hankelrec/sampling.hpp"
#include "hankelrec/types.hpp"

namespace hankelrec {

// Shared knobs for the factorization solvers. lambda weights the data term,
// beta the factorization penalty; only their ratio enters the x update, but
// beta alone sets how hard the factor updates shrink singular values (each
// sweep subtracts about 1/beta), so absolute beta matters for bias.
struct SolverConfig {
  double lambda = 31622.776601683792;  // 10^{2.5} ratio at the default beta
  double beta = 100.0;
  int rank_cap = 20;
  int max_iters = 2000;
  double tol = 1e-6;

  double gamma() const { return lambda / beta; }
  void validate() const;
};

// Bundled per-rate data-fidelity ratios lambda/beta, tabulated at sampling
// rates 10%..50% in 5% steps; intermediate rates use the nearest entry.
double fidelity_ratio_for_rate(double rate);

// Bundled per-rate l1 weights for cs_solve over the same rate grid.
double cs_lambda_for_rate(double rate);

// SolverConfig with lambda = fidelity_ratio_for_rate(rate) * beta.
SolverConfig solver_config_for_rate(double rate, double beta = 100.0);

struct TraceRow {
  int iter = 0;
  double objective = 0.0;  // fidelity + penalty + nucproxy
  double fidelity = 0.0;   // lambda/2 ||y - Ux||^2
  double penalty = 0.0;    // beta/2 ||H(x) - PQ^H||_F^2
  double nucproxy = 0.0;   // 1/2 (||P||^2 + ||Q||^2)
  double seconds = 0.0;
};

struct SolveResult {
  cvec x;
  std::vector<TraceRow> trace;
  int iterations = 0;
  // ||H(x) - PQ^H||_F / ||H(x)||_F at exit; meaningful for the multiplier
  // solver where the splitting must close.
  double primal_residual = 0.0;
};

// Data-consistency blend: at sampled n, (gamma * (U*y)_n + xt_n) / (1 + gamma);
// elsewhere xt_n. This is the exact x sub-problem solution because the
// averaging adjoint is a left inverse of the Hankel lift.
cvec data_consistency(const cvec& zero_filled_y, const cvec& x_tilde, double gamma,
                      const SamplingPattern& pattern);

// x update in operator form: blends y with the signal induced by the current
// factor pair using gamma = lambda / beta.
cvec update_x(const cvec& y, const SamplingPattern& pattern, const FactorPair& pair,
              double lambda, double beta, const HankelShape& shape);

// Alternating minimization of
//   lambda/2 ||y - Ux||^2 + beta/2 ||H(x) - PQ^H||_F^2 + 1/2 (||P||^2 + ||Q||^2)
// with exact sub-problem solutions, so the objective never increases.
SolveResult penalty_solve(const cvec& y, const SamplingPattern& pattern,
                          const SolverConfig& config, const HankelShape& shape);

// Same model solved with a scaled dual variable on the splitting H(x) = PQ^H.
// Disabling the multiplier update freezes D = 0 and reproduces penalty_solve
// exactly, which the tests use as a reduction check.
SolveResult admm_lrhmf_solve(const cvec& y, const SamplingPattern& pattern,
                             const SolverConfig& config, const HankelShape& shape,
                             bool multiplier_enabled = true);

// Nuclear-norm reference solver: ADMM with a singular-value soft-threshold on
// the lifted variable. Full SVD per iteration; intended for lengths <= 127
// where it serves as an accuracy oracle for the factorization solvers.
// threshold = 0 disables shrinkage, which keeps the zero-filled data fixed.
cvec svt_nuclear_solve(const cvec& y, const SamplingPattern& pattern, double lambda, int iters,
                       const HankelShape& shape, double threshold = 1.0);

// l1-regularized Fourier-sparsity baseline, solved by FISTA with function
// value restart on the unitary-DFT synthesis form.
cvec cs_solve(const cvec& y, const SamplingPattern& pattern, double lambda, int iters);

}  // namespace hankelrec
