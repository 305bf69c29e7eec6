#include "hankelrec/fftu.hpp"

#include <cmath>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace hankelrec {

namespace {

// Raw forward DFT without normalization.
cvec fft_raw(const cvec& x) {
  const int n = static_cast<int>(x.size());
  if (n == 0) throw ConfigError("fft of empty vector");
  std::vector<cplx> in(x.data(), x.data() + n), out(n);
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  return Eigen::Map<const cvec>(out.data(), n);
}

}  // namespace

cvec fft_u(const cvec& x) {
  return fft_raw(x) / std::sqrt(static_cast<double>(x.size()));
}

cvec ifft_u(const cvec& x) {
  // conj(F(conj(x))) = N F^{-1}(x); with unitary scaling the conjugation
  // trick needs no extra factor.
  return fft_u(x.conjugate()).conjugate();
}

cmat fft_u_cols(const cmat& m) {
  cmat out(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.col(c) = fft_u(m.col(c));
  return out;
}

cmat ifft_u_cols(const cmat& m) {
  cmat out(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.col(c) = ifft_u(m.col(c));
  return out;
}

cmat fft2_u(const cmat& m) {
  cmat tmp = fft_u_cols(m);
  return fft_u_cols(tmp.transpose()).transpose();
}

cmat ifft2_u(const cmat& m) {
  cmat tmp = ifft_u_cols(m);
  return ifft_u_cols(tmp.transpose()).transpose();
}

namespace {

cvec rotate(const cvec& x, int shift) {
  const int n = static_cast<int>(x.size());
  cvec out(n);
  for (int i = 0; i < n; ++i) out[(i + shift) % n] = x[i];
  return out;
}

}  // namespace

cvec fftshift(const cvec& x) {
  return rotate(x, static_cast<int>(x.size()) / 2);
}

cvec ifftshift(const cvec& x) {
  const int n = static_cast<int>(x.size());
  return rotate(x, n - n / 2);
}

cmat fftshift_cols(const cmat& m) {
  cmat out(m.rows(), m.cols());
  const int n = static_cast<int>(m.cols());
  for (int c = 0; c < n; ++c) out.col((c + n / 2) % n) = m.col(c);
  return out;
}

cmat ifftshift_cols(const cmat& m) {
  cmat out(m.rows(), m.cols());
  const int n = static_cast<int>(m.cols());
  for (int c = 0; c < n; ++c) out.col((c + n - n / 2) % n) = m.col(c);
  return out;
}

}  // namespace hankelrec
