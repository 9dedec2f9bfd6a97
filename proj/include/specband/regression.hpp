#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specband/longmemory.hpp"
#include "specband/modwt.hpp"

namespace specband {

struct BandSpec {
  enum class Kind { WaveletLevels, FourierExponents, FourierIndices };
  Kind kind = Kind::FourierIndices;
  double lo = 0.0;
  double hi = 0.0;

  static BandSpec levels(int k, int l) { return {Kind::WaveletLevels, double(k), double(l)}; }
  static BandSpec exponents(double a, double b) { return {Kind::FourierExponents, a, b}; }
  static BandSpec indices(std::size_t lo, std::size_t hi) { return {Kind::FourierIndices, double(lo), double(hi)}; }

  /// "5:6", "0.4:0.6", "[3,40]" style label for table output.
  std::string label() const;
};

/// Inclusive Fourier index range j = lo..hi.
struct FourierRange {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

/// Exponents map to [floor(T^a), floor(T^b)]. Valid ranges satisfy
/// 1 <= lo <= hi <= floor(T/2); anything else is an empty band.
FourierRange resolve_fourier(const BandSpec& band, std::size_t length);

enum class Method { OLS, WBLS, NBLS, FMNBLS };
std::string to_string(Method method);
Method parse_method(const std::string& name);

struct RegressionFit {
  Method method = Method::OLS;
  double alpha = 0.0;
  double beta = 0.0;
  double se_alpha = 0.0;
  double se_beta = 0.0;
  std::vector<double> residuals;  ///< y - alpha - beta x
  /// GPH estimate on the residuals; empty when it cannot be formed
  /// (too short, or exactly zero residual ordinates).
  std::optional<MemoryEstimate> residual_d;
  std::optional<BandSpec> band;
  double gamma_used = 0.0;
};

struct RegressionOptions {
  double residual_q = 0.7;
  GphRegressor regressor = GphRegressor::Sine;
};

/// Least squares with intercept and classical standard errors.
RegressionFit ols(std::span<const double> y, std::span<const double> x, const RegressionOptions& opts = {});

struct WblsConfig {
  int k = 1;
  int l = 6;
  int levels = 6;
  WaveletFamily filter = WaveletFamily::D4;
  bool include_scaling = false;
};

/// beta = sum_{j=k}^{l} cov_j(x, y) / sum_{j=k}^{l} var_j(x) from biased MODWT
/// estimates of the demeaned series; the scaling terms join when
/// include_scaling and l = J.
RegressionFit wbls(std::span<const double> y, std::span<const double> x, const WblsConfig& config,
                   const RegressionOptions& opts = {});

/// beta = Re F_xy / F_x with F = sum_{j in band} w_j I(lambda_j), w_j = 2
/// except w = 1 at the Nyquist frequency.
RegressionFit nbls(std::span<const double> y, std::span<const double> x, const BandSpec& band,
                   const RegressionOptions& opts = {});

/// Default auxiliary band [T^0.6, T^0.8].
BandSpec default_aux_band();

/// Bias-corrected NBLS. Steps: NBLS on band (beta0, residuals u);
/// gamma = clamp(gph(u), 0, 1); auxiliary NBLS of the gamma-differenced u on
/// the gamma-differenced x over aux_band (slope b); correction
///   beta = beta0 - b w_main / (w_aux - w_main),
/// where w(lambda) = (2 sin(lambda/2))^theta cos(theta (pi - lambda) / 2),
/// theta = clamp(gph(x) - gamma, 0, 1), and w_main, w_aux are the
/// periodogram-weighted means of w over each band (I_x on band, I of the
/// differenced x on aux_band). A non-positive denominator leaves beta0.
RegressionFit fmnbls(std::span<const double> y, std::span<const double> x, const BandSpec& band,
                     const std::optional<BandSpec>& aux_band = std::nullopt, const RegressionOptions& opts = {});

/// CSV header and row: method, band, alpha, beta, se_alpha, se_beta, residual_d, residual_d_se.
std::string regression_csv_header();
std::string regression_csv_row(const RegressionFit& fit);

}  // namespace specband
