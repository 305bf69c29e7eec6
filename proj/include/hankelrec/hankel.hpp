#pragma once

#include "hankelrec/types.hpp"

namespace hankelrec {

// Shape of the Hankel lift of a length n1 + n2 - 1 vector.
struct HankelShape {
  int n1 = 0;
  int n2 = 0;
  int length() const { return n1 + n2 - 1; }
};

// Near-square default: n1 = ceil((L + 1) / 2), n2 = L + 1 - n1.
HankelShape default_shape(int length);

// X(i, j) = x(i + j). Throws ConfigError when x.size() != shape.length().
cmat hankel(const cvec& x, const HankelShape& shape);

// Anti-diagonal averages; exact left inverse of hankel() on its range.
cvec hankel_adjoint_avg(const cmat& X);

// Anti-diagonal sums; the true adjoint of hankel() under the Frobenius and
// Euclidean inner products.
cvec hankel_adjoint_sum(const cmat& X);

// Number of entries on each anti-diagonal: adjoint_sum = counts .* adjoint_avg.
rvec antidiag_counts(const HankelShape& shape);

// y[k] = conj(x[L - 1 - k]).
cvec flip_conj(const cvec& x);

// Multi-channel block: column c holds channel c of a length n1 + n2 - 1
// signal group (e.g. one readout row across receive coils).
struct CoilBlock {
  cmat data;  // (n1 + n2 - 1) x channels
  HankelShape shape;
};

// Horizontal concatenation [H(x_1) ... H(x_C) H(flip_conj x_1) ... H(flip_conj x_C)].
// The mirrored half enforces the conjugate symmetry of exponential channels,
// doubling the effective measurements per rank.
cmat hankel_vc(const CoilBlock& block);

// Consistent left inverse of hankel_vc: channel c is recovered as the average
// of its direct block and the flipped conjugate of its mirrored block.
CoilBlock hankel_vc_adjoint(const cmat& Y, const HankelShape& shape, int channels);

}  // namespace hankelrec
