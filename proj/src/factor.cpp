#include "hankelrec/factor.hpp"

#include <algorithm>
#include <cstdio>

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace hankelrec {

double FactorPair::cost() const {
  return 0.5 * (p.squaredNorm() + q.squaredNorm());
}

FactorPair balanced_factors(const cmat& X, int rank_cap, double shrink) {
  if (rank_cap <= 0) throw ConfigError("rank cap must be positive");
  const int full = static_cast<int>(std::min(X.rows(), X.cols()));
  const int r = std::min(rank_cap, full);
  // BDCSVD falls back to Jacobi internally for small matrices; use Jacobi
  // directly below the crossover to avoid its preprocessing overhead.
  cmat u, v;
  rvec s;
  if (full <= 16) {
    Eigen::JacobiSVD<cmat> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u = svd.matrixU();
    v = svd.matrixV();
    s = svd.singularValues();
  } else {
    Eigen::BDCSVD<cmat> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u = svd.matrixU();
    v = svd.matrixV();
    s = svd.singularValues();
  }
  FactorPair f;
  f.p.resize(X.rows(), r);
  f.q.resize(X.cols(), r);
  for (int k = 0; k < r; ++k) {
    const double sk = std::max(s[k] - shrink, 0.0);
    const double root = std::sqrt(sk);
    f.p.col(k) = u.col(k) * root;
    f.q.col(k) = v.col(k) * root;
  }
  return f;
}

FactorPair init_factors(const cvec& x, const HankelShape& shape, int rank_cap) {
  return balanced_factors(hankel(x, shape), rank_cap, 0.0);
}

namespace {

// Solves G X = B for Hermitian positive definite G, with a rank-revealing
// fallback should Cholesky fail on a degenerate system.
cmat solve_hpd(const cmat& G, const cmat& B) {
  Eigen::LLT<cmat> llt(G);
  if (llt.info() == Eigen::Success) return llt.solve(B);
  std::fprintf(stderr, "warning: factor update system singular, using pseudo-inverse\n");
  return G.completeOrthogonalDecomposition().solve(B);
}

}  // namespace

cmat update_p(const cmat& hx, const cmat& q, double beta) {
  if (beta <= 0.0) throw ConfigError("beta must be positive");
  if (hx.cols() != q.rows()) throw ConfigError("factor shape mismatch in update_p");
  const int r = static_cast<int>(q.cols());
  const cmat G = cmat::Identity(r, r) + beta * (q.adjoint() * q);
  // P (I + beta Q^H Q) = beta hx Q, solved via the adjoint system.
  return solve_hpd(G, (beta * (hx * q)).adjoint()).adjoint();
}

cmat update_q(const cmat& hx, const cmat& p, double beta) {
  if (beta <= 0.0) throw ConfigError("beta must be positive");
  if (hx.rows() != p.rows()) throw ConfigError("factor shape mismatch in update_q");
  const int r = static_cast<int>(p.cols());
  const cmat G = cmat::Identity(r, r) + beta * (p.adjoint() * p);
  return solve_hpd(G, (beta * (hx.adjoint() * p)).adjoint()).adjoint();
}

cmat update_p(const cvec& x, const HankelShape& shape, const cmat& q, double beta) {
  return update_p(hankel(x, shape), q, beta);
}

cmat update_q(const cvec& x, const HankelShape& shape, const cmat& p, double beta) {
  return update_q(hankel(x, shape), p, beta);
}

}  // namespace hankelrec
