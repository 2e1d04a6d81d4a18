#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace canonical_tf::detail {

// Unnormalized forward DFT, X[m] = sum_k x[k] exp(-2 pi i k m / n), in place.
// Backed by FFTW; safe to call from several threads at once.
void dft_forward(std::span<std::complex<double>> data);

}  // namespace canonical_tf::detail
