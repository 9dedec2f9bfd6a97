#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace specband {

/// Cross-periodogram at the Fourier frequencies lambda_j = 2 pi j / T,
/// j = 1..floor((T-1)/2). For even T the Nyquist ordinate (j = T/2) is
/// held separately.
struct Spectrum {
  std::size_t length = 0;
  std::vector<double> frequencies;
  std::vector<std::complex<double>> ordinates;  ///< ordinates[j-1] = I_xy(lambda_j)
  std::optional<std::complex<double>> nyquist;

  /// Ordinate by Fourier index j in 1..floor(T/2) (Nyquist included).
  std::complex<double> at(std::size_t j) const;
  std::size_t max_index() const { return length / 2; }
};

/// I_xy(lambda_j) = (2 pi T)^{-1} X(lambda_j) conj(Y(lambda_j)) on demeaned
/// inputs; the auto-periodogram when y is empty.
Spectrum periodogram(std::span<const double> x, std::span<const double> y = {});

enum class GphRegressor {
  Sine,  ///< -2 log|2 sin(lambda/2)|
  Log,   ///< -2 log(lambda)
};

GphRegressor parse_gph_regressor(const std::string& name);

struct MemoryEstimate {
  double d_hat = 0.0;
  double se = 0.0;      ///< pi / sqrt(24 m)
  std::size_t m = 0;
  double q = 0.0;       ///< bandwidth exponent, m = floor(T^q)
};

/// Log-periodogram regression over j = 1..floor(T^q). Throws
/// std::invalid_argument for m < 4 and NumericError for a zero ordinate.
MemoryEstimate gph(std::span<const double> x, double q = 0.7, GphRegressor regressor = GphRegressor::Sine);

/// Same estimator with an explicit bandwidth.
MemoryEstimate gph_bandwidth(std::span<const double> x, std::size_t m, GphRegressor regressor = GphRegressor::Sine);

}  // namespace specband
