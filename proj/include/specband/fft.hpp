#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Thin wrappers over FFTW. Transforms are unnormalized:
//   X_k = sum_t x_t exp(-2 pi i k t / n)   (forward)
//   x_t = sum_k X_k exp(+2 pi i k t / n)   (backward)
// Plans are cached per size and shared between threads.
namespace specband::fft {

using cplx = std::complex<double>;

/// Forward transform of a real sequence; returns the n/2 + 1 nonnegative-frequency bins.
std::vector<cplx> forward_real(std::span<const double> x);

std::vector<cplx> forward(std::span<const cplx> x);
std::vector<cplx> backward(std::span<const cplx> x);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace specband::fft
