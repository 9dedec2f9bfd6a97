#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace specband {

enum class WaveletFamily { Haar, D4, LA8 };

/// "haar", "d4", "la8" (case-insensitive).
WaveletFamily parse_wavelet_family(const std::string& name);
std::string to_string(WaveletFamily family);

/// MODWT scaling (g) and wavelet (h) filters: the orthonormal DWT filters
/// divided by sqrt(2), with h_l = (-1)^l g_{L-1-l}.
struct FilterPair {
  WaveletFamily family;
  std::vector<double> g;
  std::vector<double> h;

  std::size_t length() const { return g.size(); }
  /// Width of the level-j equivalent filter, L_j = (2^j - 1)(L - 1) + 1.
  std::size_t level_width(int level) const;
};

FilterPair make_filter(WaveletFamily family);

/// |H_j(f)|^2 for the level-j equivalent wavelet filter,
/// H_j(f) = H(2^{j-1} f) prod_{l=0}^{j-2} G(2^l f). Requires 0 <= f <= 1/2.
double squared_gain(const FilterPair& filter, int level, double f);

/// Circular MODWT to J levels.
struct ModwtDecomp {
  int levels = 0;
  std::vector<std::vector<double>> W;  ///< W[j-1] = level-j wavelet coefficients, length T
  std::vector<double> V;               ///< level-J scaling coefficients
  FilterPair filter;

  std::size_t length() const { return V.size(); }
  /// M_j = T - L_j + 1; non-positive when every coefficient touches the boundary.
  long boundary_free(int level) const;
};

/// Pyramid algorithm with the level-j filter stretched by 2^{j-1}:
///   W_{j,t} = sum_l h_l V_{j-1, t - 2^{j-1} l mod T},
///   V_{j,t} = sum_l g_l V_{j-1, t - 2^{j-1} l mod T},  V_0 = x.
/// Requires 1 <= J <= floor(log2 T) and T >= L.
ModwtDecomp modwt(std::span<const double> x, int levels, const FilterPair& filter);

/// Largest admissible level count for a length-T input.
int max_levels(std::size_t length);

struct EnergyReport {
  std::vector<double> wavelet;  ///< ||W_j||^2, j = 1..J
  double scaling = 0.0;         ///< ||V_J||^2
  double series = 0.0;          ///< ||X||^2
  double residual = 0.0;        ///< |sum - ||X||^2| / ||X||^2 (absolute when ||X|| = 0)
};

EnergyReport energy_report(const ModwtDecomp& decomp, std::span<const double> x);

struct ScaleEstimate {
  int level = 0;
  double value = 0.0;
  std::size_t count_used = 0;
  bool biased = true;
};

/// Mean of squared level-j coefficients; unbiased averages only the M_j
/// boundary-free coefficients (s = L_j - 1 .. T - 1).
ScaleEstimate wavelet_variance(const ModwtDecomp& decomp, int level, bool unbiased);
ScaleEstimate wavelet_covariance(const ModwtDecomp& x, const ModwtDecomp& y, int level, bool unbiased);

/// Same estimators applied to the level-J scaling coefficients.
ScaleEstimate scaling_variance(const ModwtDecomp& decomp, bool unbiased);
ScaleEstimate scaling_covariance(const ModwtDecomp& x, const ModwtDecomp& y, bool unbiased);

/// CSV rows (level, position, coefficient_type, value); V rows carry level J.
std::string decomposition_csv(const ModwtDecomp& decomp);

}  // namespace specband
