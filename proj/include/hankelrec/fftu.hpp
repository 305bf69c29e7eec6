#pragma once

#include "hankelrec/types.hpp"

namespace hankelrec {

// Unitary discrete Fourier transforms: both directions carry 1/sqrt(N) so
// norms are preserved and the pair is an exact inverse.
cvec fft_u(const cvec& x);
cvec ifft_u(const cvec& x);

// Length-rows transform applied to every column independently.
cmat fft_u_cols(const cmat& m);
cmat ifft_u_cols(const cmat& m);

// Separable 2-D unitary transform.
cmat fft2_u(const cmat& m);
cmat ifft2_u(const cmat& m);

// Cyclic shifts moving the zero-frequency bin to/from the array center.
// fftshift sends bin 0 to floor(N/2); ifftshift undoes it for any N.
cvec fftshift(const cvec& x);
cvec ifftshift(const cvec& x);

// Shift applied along the column index (axis 1) of a matrix.
cmat fftshift_cols(const cmat& m);
cmat ifftshift_cols(const cmat& m);

}  // namespace hankelrec
