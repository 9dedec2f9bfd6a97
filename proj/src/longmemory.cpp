#include "specband/longmemory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "specband/error.hpp"
#include "specband/fft.hpp"
#include "specband/series.hpp"

namespace specband {

std::complex<double> Spectrum::at(std::size_t j) const {
  if (j >= 1 && j <= ordinates.size()) return ordinates[j - 1];
  if (nyquist && j == length / 2) return *nyquist;
  throw std::out_of_range("periodogram: Fourier index " + std::to_string(j) + " out of range");
}

Spectrum periodogram(std::span<const double> x, std::span<const double> y) {
  if (!y.empty() && y.size() != x.size()) throw std::invalid_argument("periodogram: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("periodogram: need at least two observations");
  const std::size_t T = x.size();
  const auto X = fft::forward_real(demean(x));
  const auto Y = y.empty() ? X : fft::forward_real(demean(y));
  const double scale = 1.0 / (2.0 * std::numbers::pi * static_cast<double>(T));
  Spectrum s;
  s.length = T;
  const std::size_t J = (T - 1) / 2;
  s.frequencies.resize(J);
  s.ordinates.resize(J);
  for (std::size_t j = 1; j <= J; ++j) {
    s.frequencies[j - 1] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(T);
    s.ordinates[j - 1] = X[j] * std::conj(Y[j]) * scale;
  }
  if (T % 2 == 0) s.nyquist = X[T / 2] * std::conj(Y[T / 2]) * scale;
  return s;
}

GphRegressor parse_gph_regressor(const std::string& name) {
  if (name == "sine" || name == "sin") return GphRegressor::Sine;
  if (name == "log") return GphRegressor::Log;
  throw std::invalid_argument("unknown GPH regressor '" + name + "' (expected sine or log)");
}

MemoryEstimate gph_bandwidth(std::span<const double> x, std::size_t m, GphRegressor regressor) {
  if (m < 4) throw std::invalid_argument("gph: bandwidth m = " + std::to_string(m) + " is below 4");
  const auto spec = periodogram(x);
  if (m > spec.ordinates.size())
    throw std::invalid_argument("gph: bandwidth m = " + std::to_string(m) + " exceeds the available frequencies");
  std::vector<double> r(m), l(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double I = spec.ordinates[j].real();
    if (!(I > 0.0)) throw NumericError("gph: zero periodogram ordinate at j = " + std::to_string(j + 1));
    const double lam = spec.frequencies[j];
    r[j] = regressor == GphRegressor::Sine ? -2.0 * std::log(std::abs(2.0 * std::sin(lam / 2.0)))
                                           : -2.0 * std::log(lam);
    l[j] = std::log(I);
  }
  const double rm = mean(r), lm = mean(l);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    sxy += (r[j] - rm) * (l[j] - lm);
    sxx += (r[j] - rm) * (r[j] - rm);
  }
  MemoryEstimate e;
  e.d_hat = sxy / sxx;
  e.m = m;
  e.se = std::numbers::pi / std::sqrt(24.0 * static_cast<double>(m));
  e.q = std::log(static_cast<double>(m)) / std::log(static_cast<double>(x.size()));
  return e;
}

MemoryEstimate gph(std::span<const double> x, double q, GphRegressor regressor) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("gph: bandwidth exponent must lie in (0, 1)");
  const auto m = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(x.size()), q)));
  auto e = gph_bandwidth(x, m, regressor);
  e.q = q;
  return e;
}

}  // namespace specband
