#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace specband {

/// Row-major rows x cols matrix; rows index scales, columns index time.
template <class T>
struct Grid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  Grid() = default;
  Grid(std::size_t r, std::size_t c, T fill = T{}) : rows(r), cols(c), data(r * c, fill) {}

  T& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<T> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const T> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

/// Geometric scale grid s_j = s0 * 2^{j dj}, j = 0, 1, ... while s_j <= s_max.
/// Zero s0 / s_max select 2 dt and T dt / 2.
struct ScaleSpec {
  double dt = 1.0;
  double dj = 1.0 / 12.0;
  double s0 = 0.0;
  double s_max = 0.0;
};

std::vector<double> make_scales(std::size_t length, const ScaleSpec& spec);

struct CwtField {
  Grid<std::complex<double>> coefficients;
  std::vector<double> scales;
  double dt = 1.0;
  double omega0 = 6.0;
  /// Largest scale at each time whose e-folding radius sqrt(2) s stays
  /// inside the sample.
  std::vector<double> coi;

  /// Fourier period of scale s: 4 pi s / (omega0 + sqrt(2 + omega0^2)).
  double fourier_period(double scale) const;
};

/// Morlet (omega0 = 6) transform via FFT of the demeaned, zero-padded
/// series; coefficients normalized by sqrt(2 pi s / dt).
CwtField cwt_morlet(std::span<const double> x, const ScaleSpec& spec = {});

/// Maximum trustworthy scale per time, dt * min(t, T-1-t) / sqrt(2).
std::vector<double> cone_of_influence(std::size_t length, double dt);

struct CoherenceResult {
  Grid<double> r2;
  Grid<double> phase;                   ///< (-pi, pi]
  std::optional<Grid<double>> threshold;  ///< per-cell significance level for r2
  std::vector<double> scales;
  std::vector<double> coi;
  double dt = 1.0;

  std::size_t length() const { return r2.cols; }
  bool in_coi(std::size_t scale_index, std::size_t t) const { return scales[scale_index] > coi[t]; }
};

/// Squared coherence R^2 = |S(W_xy / s)|^2 / (S(|W_x|^2 / s) S(|W_y|^2 / s)),
/// S = Gaussian time smoothing (sd = s) then a 0.6-octave boxcar across scales.
CoherenceResult wavelet_coherence(std::span<const double> x, std::span<const double> y,
                                  const ScaleSpec& spec = {});

/// Coherence from precomputed fields (identical scale grids required).
CoherenceResult coherence_from_fields(const CwtField& wx, const CwtField& wy);

struct Ar1Fit {
  double phi = 0.0;
  double variance = 0.0;
};

/// Lag-1 autocorrelation and sample variance of the demeaned series.
Ar1Fit fit_ar1(std::span<const double> x);

/// Per-cell quantile of surrogate r2 over n_surrogates independent AR(1)
/// pairs matched to x and y. Surrogate k draws from derive_seed(seed, k).
Grid<double> mc_significance(std::span<const double> x, std::span<const double> y,
                             std::size_t n_surrogates, double quantile, std::uint64_t seed,
                             const ScaleSpec& spec = {});

/// CSV rows (time, scale, r2, phase, significant_flag, in_coi_flag). Time
/// labels default to t * dt.
std::string coherence_csv(const CoherenceResult& result, std::span<const std::string> time_labels = {});

}  // namespace specband
