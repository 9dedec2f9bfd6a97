#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "specband/modwt.hpp"
#include "specband/series.hpp"

namespace specband {

/// Sum of squared returns.
double realized_variance(std::span<const double> returns);
double realized_variance(const ReturnSeries& returns);

struct JumpSet {
  std::vector<std::size_t> locations;  ///< last tick before each jump
  std::vector<double> sizes;
  double threshold = 0.0;
  std::size_t delta_n = 10;
};

/// Wavelet jump detection on log prices. Level-1 circular MODWT
/// coefficients (the first L-1 boundary-affected ones skipped) are compared
/// with the universal threshold d sqrt(2 log n), d = sqrt(2) median|W| / 0.6745.
/// Flags closer than delta_n merge into one event at the largest |W|; the
/// size is the mean over (tau, tau + delta_n] minus the mean over
/// (tau - delta_n, tau]. Throws NumericError("degenerate scale") when the
/// median is zero.
JumpSet detect_jumps(std::span<const double> log_prices, std::size_t delta_n = 10,
                     WaveletFamily filter = WaveletFamily::Haar);

/// Sum of squared jump sizes.
double jump_variation(const JumpSet& jumps);

/// Prices with every detected jump subtracted from the ticks after it.
std::vector<double> remove_jumps(std::span<const double> log_prices, const JumpSet& jumps);

struct JwtsrvConfig {
  WaveletFamily filter = WaveletFamily::D4;
  WaveletFamily jump_filter = WaveletFamily::Haar;
  std::optional<int> levels;       ///< J^m; default min(floor(log2 n) - 3, floor(log2 shortest subgrid))
  std::optional<std::size_t> grids;  ///< G; default floor(N^{2/3})
  std::size_t delta_n = 10;
};

struct RVDecomp {
  double rv_naive = 0.0;  ///< realized variance of the unadjusted returns
  double jv = 0.0;
  double total = 0.0;
  std::vector<double> per_scale;  ///< j = 1..J^m, then the scaling term
  bool negative = false;
  JumpSet jumps;
  std::size_t grids = 0;
  double n_bar = 0.0;  ///< average subgrid return count (N - G + 1) / G
  int levels = 0;
  WaveletFamily filter = WaveletFamily::D4;
};

/// Jump-adjusted wavelet two-scale realized variance. On the jump-adjusted
/// returns (N of them) each scale contributes
///   (1/G) sum_g ||W_j^{(g)}||^2 - (N_bar / N) ||W_j||^2,
/// where W^{(g)} is the MODWT of the returns on the g-th of G interleaved
/// subgrids and W that of all returns.
RVDecomp jwtsrv(std::span<const double> log_prices, const JwtsrvConfig& config = {});

/// Last observed price at or before each multiple of step from the first
/// stamp (inclusive) up to the last stamp.
std::vector<double> resample_last_tick(std::span<const std::int64_t> stamps, std::span<const double> prices,
                                       std::int64_t step);

}  // namespace specband
