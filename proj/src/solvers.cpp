#include "hankelrec/solvers.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/SVD>

#include "hankelrec/fftu.hpp"

namespace hankelrec {

void SolverConfig::validate() const {
  if (lambda <= 0.0) throw ConfigError("lambda must be positive");
  if (beta <= 0.0) throw ConfigError("beta must be positive");
  if (rank_cap <= 0) throw ConfigError("rank cap must be positive");
  if (max_iters <= 0) throw ConfigError("max_iters must be positive");
  if (tol < 0.0) throw ConfigError("tol must be non-negative");
}

double fidelity_ratio_for_rate(double rate) {
  if (rate <= 0.0 || rate > 1.0) throw ConfigError("sampling rate must be in (0, 1]");
  static const double rates[9] = {0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50};
  static const double log10_ratio[9] = {6.0, 3.0, 2.5, 2.5, 2.5, 2.5, 2.5, 2.5, 2.0};
  int best = 0;
  for (int i = 1; i < 9; ++i)
    if (std::abs(rates[i] - rate) < std::abs(rates[best] - rate)) best = i;
  return std::pow(10.0, log10_ratio[best]);
}

double cs_lambda_for_rate(double rate) {
  if (rate <= 0.0 || rate > 1.0) throw ConfigError("sampling rate must be in (0, 1]");
  static const double rates[9] = {0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50};
  static const double lam[9] = {0.17, 0.10, 0.08, 0.05, 0.05, 0.05, 0.04, 0.04, 0.03};
  int best = 0;
  for (int i = 1; i < 9; ++i)
    if (std::abs(rates[i] - rate) < std::abs(rates[best] - rate)) best = i;
  return lam[best];
}

SolverConfig solver_config_for_rate(double rate, double beta) {
  SolverConfig c;
  c.beta = beta;
  c.lambda = fidelity_ratio_for_rate(rate) * beta;
  return c;
}

cvec data_consistency(const cvec& zero_filled_y, const cvec& x_tilde, double gamma,
                      const SamplingPattern& pattern) {
  if (zero_filled_y.size() != x_tilde.size() || zero_filled_y.size() != pattern.n)
    throw ConfigError("data_consistency length mismatch");
  if (gamma < 0.0) throw ConfigError("gamma must be non-negative");
  cvec out = x_tilde;
  for (int i : pattern.indices) out[i] = (gamma * zero_filled_y[i] + x_tilde[i]) / (1.0 + gamma);
  return out;
}

cvec update_x(const cvec& y, const SamplingPattern& pattern, const FactorPair& pair,
              double lambda, double beta, const HankelShape& shape) {
  if (lambda < 0.0 || beta <= 0.0) throw ConfigError("update_x requires lambda >= 0, beta > 0");
  const cmat product = pair.product();
  if (product.rows() != shape.n1 || product.cols() != shape.n2)
    throw ConfigError("factor pair does not match hankel shape");
  const cvec xt = hankel_adjoint_avg(product);
  return data_consistency(apply_u_star(y, pattern), xt, lambda / beta, pattern);
}

namespace {

void check_finite(const cvec& x, const char* where) {
  if (!x.allFinite()) throw SolverDivergence(std::string("non-finite iterate in ") + where);
}

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Workspace {
  cvec uy;             // U*y zero-filled onto the grid
  std::vector<bool> mask;
  rvec counts;         // anti-diagonal multiplicities
};

Workspace make_workspace(const cvec& y, const SamplingPattern& pattern, const HankelShape& shape) {
  if (pattern.n != shape.length()) throw ConfigError("pattern grid does not match hankel shape");
  Workspace w;
  w.uy = apply_u_star(y, pattern);
  w.mask = pattern_mask(pattern);
  w.counts = antidiag_counts(shape);
  return w;
}

// Exact minimizer of lambda/2 ||y - Ux||^2 + beta/2 ||H(x) - M||_F^2 where
// xt = averaging adjoint of M. Solving with the true (summing) adjoint keeps
// the alternating objective monotone to machine precision; the blended
// data_consistency form is its unweighted approximation.
cvec exact_x_step(const Workspace& w, const cvec& xt, double lambda, double beta) {
  const int n = static_cast<int>(xt.size());
  cvec x(n);
  for (int i = 0; i < n; ++i) {
    const double sampled = w.mask[i] ? 1.0 : 0.0;
    x[i] = (lambda * sampled * w.uy[i] + beta * w.counts[i] * xt[i]) /
           (lambda * sampled + beta * w.counts[i]);
  }
  return x;
}

TraceRow make_trace_row(int iter, const cvec& x, const FactorPair& f, const Workspace& w,
                        const SolverConfig& cfg, const HankelShape& shape,
                        const std::chrono::steady_clock::time_point& start) {
  TraceRow row;
  row.iter = iter;
  double fid = 0.0;
  for (int i = 0; i < static_cast<int>(w.mask.size()); ++i)
    if (w.mask[i]) fid += std::norm(x[i] - w.uy[i]);
  row.fidelity = 0.5 * cfg.lambda * fid;
  row.penalty = 0.5 * cfg.beta * (hankel(x, shape) - f.product()).squaredNorm();
  row.nucproxy = f.cost();
  row.objective = row.fidelity + row.penalty + row.nucproxy;
  row.seconds = elapsed_seconds(start);
  return row;
}

}  // namespace

SolveResult penalty_solve(const cvec& y, const SamplingPattern& pattern,
                          const SolverConfig& config, const HankelShape& shape) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Workspace w = make_workspace(y, pattern, shape);
  cvec x = w.uy;
  FactorPair f = init_factors(x, shape, config.rank_cap);
  SolveResult r;
  for (int k = 0; k < config.max_iters; ++k) {
    const cmat hx = hankel(x, shape);
    f.p = update_p(hx, f.q, config.beta);
    f.q = update_q(hx, f.p, config.beta);
    const cvec xt = hankel_adjoint_avg(f.product());
    const cvec xnew = exact_x_step(w, xt, config.lambda, config.beta);
    check_finite(xnew, "penalty_solve");
    r.trace.push_back(make_trace_row(k + 1, xnew, f, w, config, shape, start));
    const double rel = (xnew - x).norm() / std::max(x.norm(), 1e-300);
    x = xnew;
    r.iterations = k + 1;
    if (rel < config.tol) break;
  }
  const cmat hx = hankel(x, shape);
  r.primal_residual = (hx - f.product()).norm() / std::max(hx.norm(), 1e-300);
  r.x = std::move(x);
  return r;
}

SolveResult admm_lrhmf_solve(const cvec& y, const SamplingPattern& pattern,
                             const SolverConfig& config, const HankelShape& shape,
                             bool multiplier_enabled) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Workspace w = make_workspace(y, pattern, shape);
  cvec x = w.uy;
  FactorPair f = init_factors(x, shape, config.rank_cap);
  cmat d = cmat::Zero(shape.n1, shape.n2);
  SolveResult r;
  for (int k = 0; k < config.max_iters; ++k) {
    const cmat hxd = hankel(x, shape) + d / config.beta;
    f.p = update_p(hxd, f.q, config.beta);
    f.q = update_q(hxd, f.p, config.beta);
    const cvec xt = hankel_adjoint_avg(f.product() - d / config.beta);
    const cvec xnew = exact_x_step(w, xt, config.lambda, config.beta);
    check_finite(xnew, "admm_lrhmf_solve");
    if (multiplier_enabled) d += config.beta * (hankel(xnew, shape) - f.product());
    r.trace.push_back(make_trace_row(k + 1, xnew, f, w, config, shape, start));
    const double rel = (xnew - x).norm() / std::max(x.norm(), 1e-300);
    x = xnew;
    r.iterations = k + 1;
    if (rel < config.tol) break;
  }
  const cmat hx = hankel(x, shape);
  r.primal_residual = (hx - f.product()).norm() / std::max(hx.norm(), 1e-300);
  r.x = std::move(x);
  return r;
}

cvec svt_nuclear_solve(const cvec& y, const SamplingPattern& pattern, double lambda, int iters,
                       const HankelShape& shape, double threshold) {
  if (lambda <= 0.0) throw ConfigError("lambda must be positive");
  if (iters <= 0) throw ConfigError("iters must be positive");
  if (threshold < 0.0) throw ConfigError("threshold must be non-negative");
  Workspace w = make_workspace(y, pattern, shape);
  cvec x = w.uy;
  const double mu = 1.0;  // splitting penalty; the threshold per sweep is 1/mu
  cmat z = hankel(x, shape);
  cmat d = cmat::Zero(shape.n1, shape.n2);
  for (int k = 0; k < iters; ++k) {
    Eigen::BDCSVD<cmat> svd(hankel(x, shape) + d / mu, Eigen::ComputeThinU | Eigen::ComputeThinV);
    rvec s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i) s[i] = std::max(s[i] - threshold / mu, 0.0);
    z = svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
    const cvec zd = hankel_adjoint_avg(z - d / mu);
    x = exact_x_step(w, zd, lambda, mu);
    check_finite(x, "svt_nuclear_solve");
    d += mu * (hankel(x, shape) - z);
  }
  return x;
}

cvec cs_solve(const cvec& y, const SamplingPattern& pattern, double lambda, int iters) {
  if (lambda <= 0.0) throw ConfigError("lambda must be positive");
  if (iters <= 0) throw ConfigError("iters must be positive");
  const int n = pattern.n;
  const cvec uy = apply_u_star(y, pattern);
  const std::vector<bool> mask = pattern_mask(pattern);

  // Minimize 1/2 ||U F^H s - y||^2 + lambda ||s||_1 over spectra s. The
  // forward map has unit Lipschitz constant (restriction of a unitary), so
  // the proximal gradient step size is 1.
  cvec s = fft_u(uy);
  cvec zv = s;
  double t = 1.0;
  double prev_obj = std::numeric_limits<double>::infinity();
  for (int k = 0; k < iters; ++k) {
    cvec resid = ifft_u(zv) - uy;
    for (int i = 0; i < n; ++i)
      if (!mask[i]) resid[i] = 0.0;
    const cvec grad = fft_u(resid);
    const cvec wv = zv - grad;
    cvec snew(n);
    double l1 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double mag = std::abs(wv[i]);
      snew[i] = mag > lambda ? wv[i] * (1.0 - lambda / mag) : cplx(0.0, 0.0);
      l1 += std::abs(snew[i]);
    }
    cvec fit = ifft_u(snew) - uy;
    double quad = 0.0;
    for (int i = 0; i < n; ++i)
      if (mask[i]) quad += std::norm(fit[i]);
    const double obj = 0.5 * quad + lambda * l1;
    const double tnew = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    if (obj > prev_obj) {
      // Function-value restart: drop momentum when the objective rises.
      t = 1.0;
      zv = snew;
    } else {
      zv = snew + ((t - 1.0) / tnew) * (snew - s);
      t = tnew;
    }
    prev_obj = obj;
    s = snew;
    check_finite(s, "cs_solve");
  }
  return ifft_u(s);
}

}  // namespace hankelrec
