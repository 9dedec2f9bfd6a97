#include "specband/cwt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "specband/csv.hpp"
#include "specband/error.hpp"
#include "specband/fft.hpp"
#include "specband/parallel.hpp"
#include "specband/random.hpp"
#include "specband/series.hpp"

namespace specband {

namespace {

using cplx = std::complex<double>;
constexpr double kOmega0 = 6.0;
constexpr double kScaleWindow = 0.6;

// Angular frequency of FFT bin k on a length-n grid with spacing dt.
double angular_frequency(std::size_t k, std::size_t n, double dt) {
  const double kk = k <= n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
  return 2.0 * std::numbers::pi * kk / (static_cast<double>(n) * dt);
}

// Precomputed Morlet daughters and smoothing transfer functions for one
// (length, scale grid) shape, shared by every transform of that shape.
class CoherenceEngine {
 public:
  CoherenceEngine(std::size_t length, const ScaleSpec& spec) : T_(length), dt_(spec.dt) {
    if (length < 8) throw std::invalid_argument("cwt: series length must be at least 8");
    scales_ = make_scales(length, spec);
    npad_ = fft::next_pow2(2 * T_);
    daughters_.assign(scales_.size(), std::vector<double>(npad_, 0.0));
    smoothers_.assign(scales_.size(), std::vector<double>(npad_, 0.0));
    const double norm_c = std::pow(std::numbers::pi, -0.25);
    for (std::size_t j = 0; j < scales_.size(); ++j) {
      const double s = scales_[j];
      const double amp = norm_c * std::sqrt(2.0 * std::numbers::pi * s / dt_);
      const double sigma = s / dt_;
      for (std::size_t k = 0; k < npad_; ++k) {
        const double w = angular_frequency(k, npad_, dt_);
        if (w > 0.0) daughters_[j][k] = amp * std::exp(-0.5 * (s * w - kOmega0) * (s * w - kOmega0));
        const double f = angular_frequency(k, npad_, 1.0) / (2.0 * std::numbers::pi);
        smoothers_[j][k] = std::exp(-2.0 * std::numbers::pi * std::numbers::pi * sigma * sigma * f * f);
      }
    }
    const double steps = kScaleWindow / (2.0 * spec.dj);
    const long half = std::lround(steps);
    const double edge = std::fmod(steps, 1.0);
    scale_kernel_.assign(static_cast<std::size_t>(2 * half + 1), 1.0);
    scale_kernel_.front() = edge;
    scale_kernel_.back() = edge;
    double total = 0.0;
    for (double w : scale_kernel_) total += w;
    for (double& w : scale_kernel_) w /= total;
  }

  const std::vector<double>& scales() const { return scales_; }

  Grid<cplx> transform(std::span<const double> x) const {
    if (x.size() != T_) throw std::invalid_argument("cwt: length mismatch");
    const auto xd = demean(x);
    std::vector<cplx> padded(npad_, cplx{0.0, 0.0});
    for (std::size_t t = 0; t < T_; ++t) padded[t] = xd[t];
    const auto spectrum = fft::forward(padded);
    Grid<cplx> out(scales_.size(), T_);
    std::vector<cplx> prod(npad_);
    const double inv = 1.0 / static_cast<double>(npad_);
    for (std::size_t j = 0; j < scales_.size(); ++j) {
      for (std::size_t k = 0; k < npad_; ++k) prod[k] = spectrum[k] * daughters_[j][k];
      const auto back = fft::backward(prod);
      auto row = out.row(j);
      for (std::size_t t = 0; t < T_; ++t) row[t] = back[t] * inv;
    }
    return out;
  }

  void coherence(const Grid<cplx>& wx, const Grid<cplx>& wy, Grid<double>& r2, Grid<double>& phase) const {
    const std::size_t S = scales_.size();
    Grid<cplx> cross(S, T_), power(S, T_);
    std::vector<cplx> buf(npad_);
    for (std::size_t j = 0; j < S; ++j) {
      const double inv_s = 1.0 / scales_[j];
      for (std::size_t t = 0; t < T_; ++t) {
        const cplx a = wx(j, t), b = wy(j, t);
        cross(j, t) = a * std::conj(b) * inv_s;
        power(j, t) = cplx{std::norm(a) * inv_s, std::norm(b) * inv_s};
      }
      smooth_time(cross.row(j), j, buf);
      smooth_time(power.row(j), j, buf);
    }
    const auto sc = smooth_scale(cross);
    const auto sp = smooth_scale(power);
    r2 = Grid<double>(S, T_);
    phase = Grid<double>(S, T_);
    for (std::size_t i = 0; i < sc.data.size(); ++i) {
      const double den = sp.data[i].real() * sp.data[i].imag();
      r2.data[i] = den > 0.0 ? std::norm(sc.data[i]) / den : 0.0;
      double ph = std::atan2(sc.data[i].imag(), sc.data[i].real());
      if (ph <= -std::numbers::pi) ph = std::numbers::pi;
      phase.data[i] = ph;
    }
  }

 private:
  void smooth_time(std::span<cplx> row, std::size_t j, std::vector<cplx>& buf) const {
    std::fill(buf.begin(), buf.end(), cplx{0.0, 0.0});
    std::copy(row.begin(), row.end(), buf.begin());
    auto spec = fft::forward(buf);
    for (std::size_t k = 0; k < npad_; ++k) spec[k] *= smoothers_[j][k];
    const auto back = fft::backward(spec);
    const double inv = 1.0 / static_cast<double>(npad_);
    for (std::size_t t = 0; t < row.size(); ++t) row[t] = back[t] * inv;
  }

  Grid<cplx> smooth_scale(const Grid<cplx>& in) const {
    Grid<cplx> out(in.rows, in.cols);
    const long half = static_cast<long>(scale_kernel_.size() / 2);
    const long S = static_cast<long>(in.rows);
    for (long j = 0; j < S; ++j) {
      auto dst = out.row(static_cast<std::size_t>(j));
      for (long m = -half; m <= half; ++m) {
        const long src = j + m;
        if (src < 0 || src >= S) continue;
        const double w = scale_kernel_[static_cast<std::size_t>(m + half)];
        const auto s = in.row(static_cast<std::size_t>(src));
        for (std::size_t t = 0; t < in.cols; ++t) dst[t] += w * s[t];
      }
    }
    return out;
  }

  std::size_t T_;
  double dt_;
  std::size_t npad_ = 0;
  std::vector<double> scales_;
  std::vector<std::vector<double>> daughters_;
  std::vector<std::vector<double>> smoothers_;
  std::vector<double> scale_kernel_;
};

std::vector<double> ar1_surrogate(const Ar1Fit& fit, std::size_t n, RandomStream& rng) {
  std::vector<double> out(n);
  const double sd = std::sqrt(fit.variance);
  const double innov = sd * std::sqrt(std::max(0.0, 1.0 - fit.phi * fit.phi));
  out[0] = sd * rng.normal();
  for (std::size_t t = 1; t < n; ++t) out[t] = fit.phi * out[t - 1] + innov * rng.normal();
  return out;
}

}  // namespace

std::vector<double> make_scales(std::size_t length, const ScaleSpec& spec) {
  if (!(spec.dt > 0.0) || !(spec.dj > 0.0)) throw std::invalid_argument("degenerate scale grid: dt and dj must be positive");
  const double lo_bound = 2.0 * spec.dt;
  const double hi_bound = static_cast<double>(length) * spec.dt / 2.0;
  const double s0 = spec.s0 > 0.0 ? spec.s0 : lo_bound;
  const double smax = spec.s_max > 0.0 ? spec.s_max : hi_bound;
  const double tol = 1e-12 * hi_bound;
  if (s0 < lo_bound - tol || smax > hi_bound + tol || s0 > smax)
    throw std::invalid_argument("degenerate scale grid: scales must lie within [2 dt, T dt / 2]");
  std::vector<double> scales;
  for (int j = 0;; ++j) {
    const double s = s0 * std::exp2(j * spec.dj);
    if (s > smax * (1.0 + 1e-12)) break;
    scales.push_back(s);
  }
  if (scales.size() < 2) throw std::invalid_argument("degenerate scale grid: fewer than two scales");
  return scales;
}

double CwtField::fourier_period(double scale) const {
  return 4.0 * std::numbers::pi * scale / (omega0 + std::sqrt(2.0 + omega0 * omega0));
}

std::vector<double> cone_of_influence(std::size_t length, double dt) {
  std::vector<double> coi(length);
  for (std::size_t t = 0; t < length; ++t)
    coi[t] = dt * static_cast<double>(std::min(t, length - 1 - t)) / std::numbers::sqrt2;
  return coi;
}

CwtField cwt_morlet(std::span<const double> x, const ScaleSpec& spec) {
  const CoherenceEngine engine(x.size(), spec);
  CwtField f;
  f.coefficients = engine.transform(x);
  f.scales = engine.scales();
  f.dt = spec.dt;
  f.omega0 = kOmega0;
  f.coi = cone_of_influence(x.size(), spec.dt);
  return f;
}

CoherenceResult wavelet_coherence(std::span<const double> x, std::span<const double> y, const ScaleSpec& spec) {
  if (x.size() != y.size()) throw std::invalid_argument("wavelet_coherence: length mismatch");
  const CoherenceEngine engine(x.size(), spec);
  CoherenceResult r;
  engine.coherence(engine.transform(x), engine.transform(y), r.r2, r.phase);
  r.scales = engine.scales();
  r.coi = cone_of_influence(x.size(), spec.dt);
  r.dt = spec.dt;
  return r;
}

CoherenceResult coherence_from_fields(const CwtField& wx, const CwtField& wy) {
  if (wx.scales != wy.scales || wx.coefficients.cols != wy.coefficients.cols || wx.dt != wy.dt)
    throw std::invalid_argument("wavelet_coherence: fields differ in shape");
  ScaleSpec spec;
  spec.dt = wx.dt;
  spec.s0 = wx.scales.front();
  spec.s_max = wx.scales.back();
  spec.dj = std::log2(wx.scales[1] / wx.scales[0]);
  const CoherenceEngine engine(wx.coefficients.cols, spec);
  CoherenceResult r;
  engine.coherence(wx.coefficients, wy.coefficients, r.r2, r.phase);
  r.scales = wx.scales;
  r.coi = wx.coi;
  r.dt = wx.dt;
  return r;
}

Ar1Fit fit_ar1(std::span<const double> x) {
  if (x.size() < 3) throw std::invalid_argument("mc_significance: series too short to fit a lag-1 coefficient");
  const auto d = demean(x);
  double c0 = 0.0, c1 = 0.0;
  for (std::size_t t = 0; t < d.size(); ++t) c0 += d[t] * d[t];
  for (std::size_t t = 1; t < d.size(); ++t) c1 += d[t] * d[t - 1];
  if (!(c0 > 0.0)) throw NumericError("mc_significance: constant series has no lag-1 coefficient");
  Ar1Fit fit;
  fit.phi = std::clamp(c1 / c0, -0.999, 0.999);
  fit.variance = c0 / static_cast<double>(d.size());
  return fit;
}

Grid<double> mc_significance(std::span<const double> x, std::span<const double> y, std::size_t n_surrogates,
                             double quantile, std::uint64_t seed, const ScaleSpec& spec) {
  if (n_surrogates < 100) throw std::invalid_argument("mc_significance: need at least 100 surrogates");
  if (!(quantile > 0.0 && quantile < 1.0)) throw std::invalid_argument("mc_significance: quantile must lie in (0, 1)");
  if (x.size() != y.size()) throw std::invalid_argument("mc_significance: length mismatch");
  const Ar1Fit fx = fit_ar1(x);
  const Ar1Fit fy = fit_ar1(y);
  const CoherenceEngine engine(x.size(), spec);
  const std::size_t S = engine.scales().size();
  const std::size_t T = x.size();
  const std::size_t cells = S * T;
  std::vector<float> draws(cells * n_surrogates);

  parallel_for(n_surrogates, [&](std::size_t k) {
    const std::uint64_t s = derive_seed(seed, k);
    RandomStream rx(s, 0), ry(s, 1);
    const auto sx = ar1_surrogate(fx, T, rx);
    const auto sy = ar1_surrogate(fy, T, ry);
    Grid<double> r2, phase;
    engine.coherence(engine.transform(sx), engine.transform(sy), r2, phase);
    for (std::size_t c = 0; c < cells; ++c) draws[c * n_surrogates + k] = static_cast<float>(r2.data[c]);
  });

  Grid<double> out(S, T);
  const double h = (static_cast<double>(n_surrogates) - 1.0) * quantile;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  std::vector<float> tmp(n_surrogates);
  for (std::size_t c = 0; c < cells; ++c) {
    std::copy_n(draws.begin() + static_cast<std::ptrdiff_t>(c * n_surrogates), n_surrogates, tmp.begin());
    std::sort(tmp.begin(), tmp.end());
    const double a = tmp[lo];
    const double b = tmp[std::min(lo + 1, n_surrogates - 1)];
    out.data[c] = a + frac * (b - a);
  }
  return out;
}

std::string coherence_csv(const CoherenceResult& result, std::span<const std::string> time_labels) {
  if (!time_labels.empty() && time_labels.size() != result.length())
    throw std::invalid_argument("coherence_csv: label count differs from series length");
  std::string out = "time,scale,r2,phase,significant_flag,in_coi_flag\n";
  for (std::size_t t = 0; t < result.length(); ++t) {
    const std::string label =
        time_labels.empty() ? format_double(static_cast<double>(t) * result.dt) : time_labels[t];
    for (std::size_t j = 0; j < result.scales.size(); ++j) {
      const double r = result.r2(j, t);
      const bool sig = result.threshold && r > (*result.threshold)(j, t);
      out += label + "," + format_double(result.scales[j]) + "," + format_double(r) + "," +
             format_double(result.phase(j, t)) + "," + (sig ? "1" : "0") + "," + (result.in_coi(j, t) ? "1" : "0") +
             "\n";
    }
  }
  return out;
}

}  // namespace specband
