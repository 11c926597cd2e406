#pragma once

#include <complex>
#include <vector>

namespace fsl::detail {

// In-place FFTW transforms. Plans are created once per shape under a lock and
// executed through the new-array interface, so concurrent callers are safe.
// sign = -1 is FFTW_FORWARD (e^{-i...}), +1 is FFTW_BACKWARD; unnormalized.

// n-dimensional transform of `howmany` contiguous blocks.
void fft_blocks(std::complex<double>* data, int dim, int points, int howmany, int sign);

// 1-D transform of length `length` along a stride of `stride` elements,
// repeated for `stride` interleaved columns (time axis of a frame-major array).
void fft_columns(std::complex<double>* data, int length, int stride, int sign);

}  // namespace fsl::detail
