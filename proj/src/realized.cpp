#include "specband/realized.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "specband/error.hpp"

namespace specband {

namespace {

// Delay between an input step and the largest level-1 wavelet response:
// argmax over m of |h_0 + ... + h_m|.
std::size_t response_peak(const FilterPair& f) {
  std::size_t best = 0;
  double best_val = -1.0, acc = 0.0;
  for (std::size_t m = 0; m < f.h.size(); ++m) {
    acc += f.h[m];
    if (std::abs(acc) > best_val + 1e-12) {
      best_val = std::abs(acc);
      best = m;
    }
  }
  return best;
}

double window_mean(std::span<const double> x, std::size_t first, std::size_t last) {
  double s = 0.0;
  for (std::size_t i = first; i <= last; ++i) s += x[i];
  return s / static_cast<double>(last - first + 1);
}

double sum_squares(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

int floor_log2(std::size_t n) {
  int j = -1;
  while (n) {
    n >>= 1;
    ++j;
  }
  return j;
}

}  // namespace

double realized_variance(std::span<const double> returns) { return sum_squares(returns); }

double realized_variance(const ReturnSeries& returns) { return sum_squares(returns.values()); }

JumpSet detect_jumps(std::span<const double> log_prices, std::size_t delta_n, WaveletFamily family) {
  const std::size_t n = log_prices.size();
  if (n < 16) throw std::invalid_argument("detect_jumps: need at least 16 observations");
  if (delta_n < 1) throw std::invalid_argument("detect_jumps: delta_n must be positive");
  const auto filter = make_filter(family);
  const auto w = modwt(log_prices, 1, filter).W[0];
  const std::size_t skip = filter.length() - 1;

  std::vector<double> absw;
  absw.reserve(n - skip);
  for (std::size_t k = skip; k < n; ++k) absw.push_back(std::abs(w[k]));
  auto mid = absw.begin() + static_cast<std::ptrdiff_t>(absw.size() / 2);
  std::nth_element(absw.begin(), mid, absw.end());
  double median = *mid;
  if (absw.size() % 2 == 0) median = 0.5 * (median + *std::max_element(absw.begin(), mid));
  if (!(median > 0.0)) throw NumericError("degenerate scale");

  JumpSet set;
  set.delta_n = delta_n;
  const double d = std::numbers::sqrt2 * median / 0.6745;
  set.threshold = d * std::sqrt(2.0 * std::log(static_cast<double>(n)));

  std::vector<std::size_t> events;
  std::size_t last_flag = 0;
  bool open = false;
  for (std::size_t k = skip; k < n; ++k) {
    if (!(std::abs(w[k]) > set.threshold)) continue;
    if (open && k - last_flag <= delta_n) {
      if (std::abs(w[k]) > std::abs(w[events.back()])) events.back() = k;
    } else {
      events.push_back(k);
      open = true;
    }
    last_flag = k;
  }

  const std::size_t peak = response_peak(filter);
  for (std::size_t k : events) {
    if (k < peak + 1) continue;
    const std::size_t tau = k - peak - 1;
    if (tau + 1 >= n) continue;
    const std::size_t after_hi = std::min(tau + delta_n, n - 1);
    const std::size_t before_lo = tau + 1 >= delta_n ? tau + 1 - delta_n : 0;
    const double size = window_mean(log_prices, tau + 1, after_hi) - window_mean(log_prices, before_lo, tau);
    if (!set.locations.empty() && tau <= set.locations.back()) continue;
    set.locations.push_back(tau);
    set.sizes.push_back(size);
  }
  return set;
}

double jump_variation(const JumpSet& jumps) { return sum_squares(jumps.sizes); }

std::vector<double> remove_jumps(std::span<const double> log_prices, const JumpSet& jumps) {
  std::vector<double> out(log_prices.begin(), log_prices.end());
  double cum = 0.0;
  std::size_t next = 0;
  for (std::size_t t = 0; t < out.size(); ++t) {
    while (next < jumps.locations.size() && jumps.locations[next] < t) cum += jumps.sizes[next++];
    out[t] -= cum;
  }
  return out;
}

RVDecomp jwtsrv(std::span<const double> log_prices, const JwtsrvConfig& config) {
  const std::size_t n = log_prices.size();
  if (n < 64) throw std::invalid_argument("jwtsrv: need at least 64 observations");
  const std::size_t N = n - 1;

  RVDecomp out;
  out.filter = config.filter;
  for (std::size_t t = 1; t < n; ++t) out.rv_naive += (log_prices[t] - log_prices[t - 1]) * (log_prices[t] - log_prices[t - 1]);
  out.jumps = detect_jumps(log_prices, config.delta_n, config.jump_filter);
  out.jv = jump_variation(out.jumps);
  const auto adj = remove_jumps(log_prices, out.jumps);

  const std::size_t G =
      config.grids.value_or(static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(N), 2.0 / 3.0))));
  if (G < 1) throw std::invalid_argument("jwtsrv: need at least one grid");
  out.grids = G;
  out.n_bar = static_cast<double>(N - G + 1) / static_cast<double>(G);
  if (G > N || out.n_bar < 4.0)
    throw std::invalid_argument("jwtsrv: G = " + std::to_string(G) + " leaves fewer than 4 returns per subgrid");

  const auto filter = make_filter(config.filter);
  const std::size_t shortest = (n - 1 - (G - 1)) / G;
  if (shortest < filter.length())
    throw std::invalid_argument("jwtsrv: subgrids are shorter than the wavelet filter");
  const int cap = floor_log2(shortest);
  const int J = config.levels.value_or(std::max(1, std::min(floor_log2(n) - 3, cap)));
  if (J < 1 || J > cap)
    throw std::invalid_argument("jwtsrv: J^m = " + std::to_string(J) + " exceeds floor(log2) of the shortest subgrid (" +
                                std::to_string(cap) + ")");
  out.levels = J;

  std::vector<double> slow(static_cast<std::size_t>(J) + 1, 0.0);
  std::vector<double> sub;
  for (std::size_t g = 0; g < G; ++g) {
    sub.clear();
    for (std::size_t t = g + G; t < n; t += G) sub.push_back(adj[t] - adj[t - G]);
    const auto d = modwt(sub, J, filter);
    for (int j = 0; j < J; ++j) slow[static_cast<std::size_t>(j)] += sum_squares(d.W[static_cast<std::size_t>(j)]);
    slow[static_cast<std::size_t>(J)] += sum_squares(d.V);
  }
  std::vector<double> r(N);
  for (std::size_t t = 1; t < n; ++t) r[t - 1] = adj[t] - adj[t - 1];
  const auto full = modwt(r, J, filter);

  const double ratio = out.n_bar / static_cast<double>(N);
  out.per_scale.resize(static_cast<std::size_t>(J) + 1);
  for (int j = 0; j <= J; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    const double fast = j < J ? sum_squares(full.W[idx]) : sum_squares(full.V);
    out.per_scale[idx] = slow[idx] / static_cast<double>(G) - ratio * fast;
  }
  for (double v : out.per_scale) out.total += v;
  out.negative = out.total < 0.0;
  return out;
}

std::vector<double> resample_last_tick(std::span<const std::int64_t> stamps, std::span<const double> prices,
                                       std::int64_t step) {
  if (stamps.size() != prices.size() || stamps.empty())
    throw std::invalid_argument("resample: stamps and prices must be non-empty and of equal length");
  if (step <= 0) throw std::invalid_argument("resample: step must be positive");
  std::vector<double> out;
  std::size_t i = 0;
  for (std::int64_t at = stamps.front(); at <= stamps.back(); at += step) {
    while (i + 1 < stamps.size() && stamps[i + 1] <= at) ++i;
    out.push_back(prices[i]);
  }
  return out;
}

}  // namespace specband
