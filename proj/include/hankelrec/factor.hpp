#pragma once

#include "hankelrec/hankel.hpp"
#include "hankelrec/types.hpp"

namespace hankelrec {

// Low-rank factor pair; the represented matrix is p * q^H.
struct FactorPair {
  cmat p;  // n1 x r
  cmat q;  // n2 x r
  cmat product() const { return p * q.adjoint(); }
  // 1/2 (||p||_F^2 + ||q||_F^2); for a balanced pair this equals the nuclear
  // norm of the product, which is why the solvers can use it as a surrogate.
  double cost() const;
};

// Truncated SVD split P = U_r S_r^{1/2}, Q = V_r S_r^{1/2}. rank_cap is
// clamped to min(rows, cols). shrink > 0 soft-thresholds the singular values
// before the split, dropping components that fall to zero.
FactorPair balanced_factors(const cmat& X, int rank_cap, double shrink = 0.0);

// Balanced factors of the Hankel lift of x; the solvers' starting point.
FactorPair init_factors(const cvec& x, const HankelShape& shape, int rank_cap);

// Ridge-regularized least-squares factor updates:
//   update_p: argmin_P 1/2 ||P||_F^2 + beta/2 ||hx - P Q^H||_F^2
//           = beta hx Q (I + beta Q^H Q)^{-1}
// and symmetrically for update_q with the roles of the factors swapped.
// The r x r system is solved by Cholesky; if the (always positive definite)
// matrix is numerically singular a pseudo-inverse fallback is used and a
// warning is emitted on stderr.
cmat update_p(const cmat& hx, const cmat& q, double beta);
cmat update_q(const cmat& hx, const cmat& p, double beta);

// Convenience overloads operating on a signal instead of a prebuilt lift.
cmat update_p(const cvec& x, const HankelShape& shape, const cmat& q, double beta);
cmat update_q(const cvec& x, const HankelShape& shape, const cmat& p, double beta);

}  // namespace hankelrec
