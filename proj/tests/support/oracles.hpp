#pragma once

// Independent reference implementations used only by tests. None of these
// call into the library's numerical kernels.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

inline double mean(std::span<const double> x) {
  long double s = 0;
  for (double v : x) s += v;
  return static_cast<double>(s / static_cast<long double>(x.size()));
}

inline double sd(std::span<const double> x) {
  const double m = mean(x);
  long double s = 0;
  for (double v : x) s += (v - m) * (v - m);
  return static_cast<double>(std::sqrt(s / static_cast<long double>(x.size() - 1)));
}

/// Direct O(T^2) DFT of the demeaned inputs at j = 1..floor(T/2).
inline std::vector<std::complex<double>> cross_periodogram(std::span<const double> x, std::span<const double> y) {
  const std::size_t T = x.size();
  const double mx = mean(x), my = mean(y);
  std::vector<std::complex<double>> out;
  for (std::size_t j = 1; j <= T / 2; ++j) {
    std::complex<long double> X{0, 0}, Y{0, 0};
    for (std::size_t t = 0; t < T; ++t) {
      const long double ang = -2.0L * std::numbers::pi_v<long double> * static_cast<long double>(j * t % T) / T;
      const std::complex<long double> e{std::cos(ang), std::sin(ang)};
      X += static_cast<long double>(x[t] - mx) * e;
      Y += static_cast<long double>(y[t] - my) * e;
    }
    const auto I = X * std::conj(Y) / (2.0L * std::numbers::pi_v<long double> * T);
    out.emplace_back(static_cast<double>(I.real()), static_cast<double>(I.imag()));
  }
  return out;
}

/// Level-j equivalent MODWT filters built by convolving upsampled stages,
/// then applied by direct circular filtering (no pyramid).
struct EquivalentFilters {
  std::vector<double> h;
  std::vector<double> g;
};

inline std::vector<double> upsample(std::span<const double> f, std::size_t factor) {
  std::vector<double> out((f.size() - 1) * factor + 1, 0.0);
  for (std::size_t l = 0; l < f.size(); ++l) out[l * factor] = f[l];
  return out;
}

inline std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) out[i + k] += a[i] * b[k];
  return out;
}

inline EquivalentFilters equivalent(std::span<const double> h, std::span<const double> g, int level) {
  std::vector<double> acc{1.0};
  for (int l = 0; l < level - 1; ++l) acc = convolve(acc, upsample(g, std::size_t{1} << l));
  const std::size_t top = std::size_t{1} << (level - 1);
  return {convolve(acc, upsample(h, top)), convolve(acc, upsample(g, top))};
}

inline std::vector<double> circular_filter(std::span<const double> f, std::span<const double> x) {
  const std::size_t T = x.size();
  std::vector<double> out(T, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    long double s = 0;
    for (std::size_t l = 0; l < f.size(); ++l) s += f[l] * x[(t + T * (l / T + 1) - l % T) % T];
    out[t] = static_cast<double>(s);
  }
  return out;
}

/// Binomial weights of (1 - L)^d as the closed product
/// pi_k = prod_{i<k} (i - d) / (i + 1), in extended precision.
inline std::vector<double> frac_weights_gamma(std::size_t n, double d) {
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 0) {
      w[k] = 1.0;
      continue;
    }
    long double p = 1.0L;
    for (std::size_t i = 0; i < k; ++i) p *= (static_cast<long double>(i) - d) / static_cast<long double>(i + 1);
    w[k] = static_cast<double>(p);
  }
  return w;
}

inline std::vector<double> frac_diff_direct(std::span<const double> x, double d) {
  const auto w = frac_weights_gamma(x.size(), d);
  std::vector<double> y(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    long double s = 0;
    for (std::size_t k = 0; k <= t; ++k) s += static_cast<long double>(w[k]) * x[t - k];
    y[t] = static_cast<double>(s);
  }
  return y;
}

/// Standard normal CDF in extended precision.
inline long double norm_cdf(long double x) { return 0.5L * std::erfc(-x / std::sqrt(2.0L)); }

inline double black_call(double F, double K, double sigma, double tau) {
  const long double sd = static_cast<long double>(sigma) * std::sqrt(static_cast<long double>(tau));
  const long double d1 = (std::log(static_cast<long double>(F) / K) + 0.5L * sd * sd) / sd;
  return static_cast<double>(F * norm_cdf(d1) - K * norm_cdf(d1 - sd));
}

/// 2 * int_lo^hi (C(K) - (F - K)^+) / K^2 dK by a fine trapezoid.
inline double variance_integral(double F, double sigma, double tau, double lo, double hi, std::size_t steps) {
  const double h = (hi - lo) / static_cast<double>(steps);
  long double acc = 0;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double K = lo + h * static_cast<double>(i);
    const double g = (black_call(F, K, sigma, tau) - std::max(0.0, F - K)) / (K * K);
    acc += (i == 0 || i == steps) ? 0.5L * g : static_cast<long double>(g);
  }
  return static_cast<double>(2.0L * acc * h);
}

/// OLS slope and intercept in extended precision.
inline std::pair<double, double> ols(std::span<const double> y, std::span<const double> x) {
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const long double n = x.size();
  for (std::size_t t = 0; t < x.size(); ++t) {
    sx += x[t];
    sy += y[t];
    sxx += static_cast<long double>(x[t]) * x[t];
    sxy += static_cast<long double>(x[t]) * y[t];
  }
  const long double beta = (sxy - sx * sy / n) / (sxx - sx * sx / n);
  return {static_cast<double>((sy - beta * sx) / n), static_cast<double>(beta)};
}

}  // namespace oracle
