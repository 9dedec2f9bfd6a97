#include "specband/modwt.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "specband/csv.hpp"

namespace specband {

namespace {

// Least-asymmetric length-8 scaling filter (orthonormal DWT normalization),
// refined so the orthogonality and vanishing-moment conditions hold to
// double precision.
constexpr double kLa8[8] = {
    -0.075765714789502213228, -0.029635527646002491764, 0.49761866763277498998,
    0.80373875180513208088,   0.2978577956053060514,    -0.099219543576633532585,
    -0.012603967262031303754, 0.032223100604051467872,
};

FilterPair from_scaling(WaveletFamily family, std::vector<double> g) {
  const std::size_t L = g.size();
  FilterPair f{family, std::move(g), std::vector<double>(L)};
  for (std::size_t l = 0; l < L; ++l) f.h[l] = ((l % 2) ? -1.0 : 1.0) * f.g[L - 1 - l];
  return f;
}

void check_level(const ModwtDecomp& d, int level) {
  if (level < 1 || level > d.levels)
    throw std::invalid_argument("level " + std::to_string(level) + " outside 1.." + std::to_string(d.levels));
}

void check_compatible(const ModwtDecomp& x, const ModwtDecomp& y) {
  if (x.length() != y.length() || x.levels != y.levels || x.filter.family != y.filter.family)
    throw std::invalid_argument("wavelet_covariance: decompositions differ in length, levels or filter");
}

ScaleEstimate mean_product(std::span<const double> a, std::span<const double> b, long boundary_free,
                           int level, bool unbiased) {
  const std::size_t T = a.size();
  std::size_t start = 0;
  if (unbiased) {
    if (boundary_free <= 0)
      throw std::invalid_argument("unbiased estimator at level " + std::to_string(level) +
                                  ": no boundary-free coefficients (M_j <= 0)");
    start = T - static_cast<std::size_t>(boundary_free);
  }
  double acc = 0.0;
  for (std::size_t s = start; s < T; ++s) acc += a[s] * b[s];
  const std::size_t n = T - start;
  return {level, acc / static_cast<double>(n), n, !unbiased};
}

}  // namespace

WaveletFamily parse_wavelet_family(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (n == "haar") return WaveletFamily::Haar;
  if (n == "d4") return WaveletFamily::D4;
  if (n == "la8") return WaveletFamily::LA8;
  throw std::invalid_argument("unsupported wavelet family '" + name + "'");
}

std::string to_string(WaveletFamily family) {
  switch (family) {
    case WaveletFamily::Haar: return "haar";
    case WaveletFamily::D4: return "d4";
    case WaveletFamily::LA8: return "la8";
  }
  return "unknown";
}

std::size_t FilterPair::level_width(int level) const {
  return ((std::size_t{1} << level) - 1) * (length() - 1) + 1;
}

FilterPair make_filter(WaveletFamily family) {
  switch (family) {
    case WaveletFamily::Haar:
      return from_scaling(family, {0.5, 0.5});
    case WaveletFamily::D4: {
      // (1 + sqrt 3, 3 + sqrt 3, 3 - sqrt 3, 1 - sqrt 3) / (4 sqrt 2), divided by sqrt 2.
      const double s3 = std::sqrt(3.0);
      return from_scaling(family, {(1.0 + s3) / 8.0, (3.0 + s3) / 8.0, (3.0 - s3) / 8.0, (1.0 - s3) / 8.0});
    }
    case WaveletFamily::LA8: {
      std::vector<double> g(std::begin(kLa8), std::end(kLa8));
      for (double& v : g) v /= std::numbers::sqrt2;
      return from_scaling(family, std::move(g));
    }
  }
  throw std::invalid_argument("unsupported wavelet family");
}

double squared_gain(const FilterPair& filter, int level, double f) {
  if (!(f >= 0.0 && f <= 0.5)) throw std::invalid_argument("squared_gain: frequency must lie in [0, 1/2]");
  if (level < 1) throw std::invalid_argument("squared_gain: level must be >= 1");
  auto transfer = [](std::span<const double> taps, double freq) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t l = 0; l < taps.size(); ++l)
      acc += taps[l] * std::polar(1.0, -2.0 * std::numbers::pi * freq * static_cast<double>(l));
    return acc;
  };
  std::complex<double> H = transfer(filter.h, std::ldexp(f, level - 1));
  for (int l = 0; l <= level - 2; ++l) H *= transfer(filter.g, std::ldexp(f, l));
  return std::norm(H);
}

long ModwtDecomp::boundary_free(int level) const {
  return static_cast<long>(length()) - static_cast<long>(filter.level_width(level)) + 1;
}

int max_levels(std::size_t length) {
  int j = 0;
  while ((std::size_t{2} << j) <= length) ++j;
  return j;
}

ModwtDecomp modwt(std::span<const double> x, int levels, const FilterPair& filter) {
  const std::size_t T = x.size();
  const std::size_t L = filter.length();
  if (T < L) throw std::invalid_argument("modwt: series shorter than the filter");
  if (levels < 1) throw std::invalid_argument("modwt: need at least one level");
  if (levels > max_levels(T))
    throw std::invalid_argument("modwt: J = " + std::to_string(levels) + " exceeds floor(log2 T) = " +
                                std::to_string(max_levels(T)));
  ModwtDecomp d;
  d.levels = levels;
  d.filter = filter;
  d.W.assign(static_cast<std::size_t>(levels), std::vector<double>(T));
  std::vector<double> v(x.begin(), x.end());
  std::vector<double> next(T);
  for (int j = 1; j <= levels; ++j) {
    const std::size_t stride = (std::size_t{1} << (j - 1)) % T;
    auto& w = d.W[static_cast<std::size_t>(j - 1)];
    for (std::size_t t = 0; t < T; ++t) {
      double wa = 0.0, va = 0.0;
      std::size_t idx = t;
      for (std::size_t l = 0; l < L; ++l) {
        wa += filter.h[l] * v[idx];
        va += filter.g[l] * v[idx];
        idx = idx >= stride ? idx - stride : idx + T - stride;
      }
      w[t] = wa;
      next[t] = va;
    }
    v.swap(next);
  }
  d.V = std::move(v);
  return d;
}

EnergyReport energy_report(const ModwtDecomp& decomp, std::span<const double> x) {
  auto sq = [](std::span<const double> a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return s;
  };
  EnergyReport r;
  double total = 0.0;
  for (const auto& w : decomp.W) {
    r.wavelet.push_back(sq(w));
    total += r.wavelet.back();
  }
  r.scaling = sq(decomp.V);
  total += r.scaling;
  r.series = sq(x);
  const double diff = std::abs(total - r.series);
  r.residual = r.series > 0.0 ? diff / r.series : diff;
  return r;
}

ScaleEstimate wavelet_variance(const ModwtDecomp& decomp, int level, bool unbiased) {
  check_level(decomp, level);
  const auto& w = decomp.W[static_cast<std::size_t>(level - 1)];
  return mean_product(w, w, decomp.boundary_free(level), level, unbiased);
}

ScaleEstimate wavelet_covariance(const ModwtDecomp& x, const ModwtDecomp& y, int level, bool unbiased) {
  check_compatible(x, y);
  check_level(x, level);
  const auto idx = static_cast<std::size_t>(level - 1);
  return mean_product(x.W[idx], y.W[idx], x.boundary_free(level), level, unbiased);
}

ScaleEstimate scaling_variance(const ModwtDecomp& decomp, bool unbiased) {
  return mean_product(decomp.V, decomp.V, decomp.boundary_free(decomp.levels), decomp.levels, unbiased);
}

ScaleEstimate scaling_covariance(const ModwtDecomp& x, const ModwtDecomp& y, bool unbiased) {
  check_compatible(x, y);
  return mean_product(x.V, y.V, x.boundary_free(x.levels), x.levels, unbiased);
}

std::string decomposition_csv(const ModwtDecomp& decomp) {
  std::string out = "level,position,coefficient_type,value\n";
  for (int j = 1; j <= decomp.levels; ++j) {
    const auto& w = decomp.W[static_cast<std::size_t>(j - 1)];
    for (std::size_t s = 0; s < w.size(); ++s)
      out += std::to_string(j) + "," + std::to_string(s) + ",W," + format_double(w[s]) + "\n";
  }
  for (std::size_t s = 0; s < decomp.V.size(); ++s)
    out += std::to_string(decomp.levels) + "," + std::to_string(s) + ",V," + format_double(decomp.V[s]) + "\n";
  return out;
}

}  // namespace specband
