#include "hankelrec/hankel.hpp"

namespace hankelrec {

HankelShape default_shape(int length) {
  if (length <= 0) throw ConfigError("hankel length must be positive");
  const int n1 = (length + 2) / 2;  // ceil((length + 1) / 2)
  return {n1, length + 1 - n1};
}

cmat hankel(const cvec& x, const HankelShape& shape) {
  if (shape.n1 <= 0 || shape.n2 <= 0) throw ConfigError("hankel shape must be positive");
  if (x.size() != shape.length()) throw ConfigError("hankel shape does not match signal length");
  cmat X(shape.n1, shape.n2);
  for (int j = 0; j < shape.n2; ++j)
    for (int i = 0; i < shape.n1; ++i) X(i, j) = x[i + j];
  return X;
}

cvec hankel_adjoint_sum(const cmat& X) {
  const int n1 = static_cast<int>(X.rows());
  const int n2 = static_cast<int>(X.cols());
  if (n1 == 0 || n2 == 0) throw ConfigError("hankel adjoint of empty matrix");
  cvec x = cvec::Zero(n1 + n2 - 1);
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) x[i + j] += X(i, j);
  return x;
}

rvec antidiag_counts(const HankelShape& shape) {
  if (shape.n1 <= 0 || shape.n2 <= 0) throw ConfigError("hankel shape must be positive");
  rvec w = rvec::Zero(shape.length());
  for (int j = 0; j < shape.n2; ++j)
    for (int i = 0; i < shape.n1; ++i) w[i + j] += 1.0;
  return w;
}

cvec hankel_adjoint_avg(const cmat& X) {
  const int n1 = static_cast<int>(X.rows());
  const int n2 = static_cast<int>(X.cols());
  if (n1 == 0 || n2 == 0) throw ConfigError("hankel adjoint of empty matrix");
  // Running mean per anti-diagonal instead of sum / count: when every entry on
  // an anti-diagonal is identical (any matrix in the range of hankel()) the
  // increments vanish and the round trip is bitwise exact.
  cvec x = cvec::Zero(n1 + n2 - 1);
  rvec seen = rvec::Zero(n1 + n2 - 1);
  for (int j = 0; j < n2; ++j) {
    for (int i = 0; i < n1; ++i) {
      const int k = i + j;
      seen[k] += 1.0;
      x[k] += (X(i, j) - x[k]) / seen[k];
    }
  }
  return x;
}

cvec flip_conj(const cvec& x) {
  const Eigen::Index n = x.size();
  cvec y(n);
  for (Eigen::Index k = 0; k < n; ++k) y[k] = std::conj(x[n - 1 - k]);
  return y;
}

cmat hankel_vc(const CoilBlock& block) {
  const int channels = static_cast<int>(block.data.cols());
  if (channels <= 0) throw ConfigError("coil block needs at least one channel");
  if (block.data.rows() != block.shape.length())
    throw ConfigError("coil block length does not match hankel shape");
  cmat Y(block.shape.n1, 2 * block.shape.n2 * channels);
  for (int c = 0; c < channels; ++c) {
    const cvec xc = block.data.col(c);
    Y.middleCols(c * block.shape.n2, block.shape.n2) = hankel(xc, block.shape);
    Y.middleCols((channels + c) * block.shape.n2, block.shape.n2) =
        hankel(flip_conj(xc), block.shape);
  }
  return Y;
}

CoilBlock hankel_vc_adjoint(const cmat& Y, const HankelShape& shape, int channels) {
  if (channels <= 0) throw ConfigError("coil block needs at least one channel");
  if (Y.rows() != shape.n1 || Y.cols() != 2LL * shape.n2 * channels)
    throw ConfigError("virtual coil matrix does not match shape/channel count");
  CoilBlock block;
  block.shape = shape;
  block.data.resize(shape.length(), channels);
  for (int c = 0; c < channels; ++c) {
    const cvec direct = hankel_adjoint_avg(Y.middleCols(c * shape.n2, shape.n2));
    const cvec mirrored = hankel_adjoint_avg(Y.middleCols((channels + c) * shape.n2, shape.n2));
    block.data.col(c) = 0.5 * (direct + flip_conj(mirrored));
  }
  return block;
}

}  // namespace hankelrec
