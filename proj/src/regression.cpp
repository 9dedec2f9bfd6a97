#include "specband/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "specband/csv.hpp"
#include "specband/error.hpp"
#include "specband/series.hpp"

namespace specband {

namespace {

void check_pair(std::span<const double> y, std::span<const double> x, const char* who) {
  if (y.size() != x.size()) throw std::invalid_argument(std::string(who) + ": y and x differ in length");
  if (x.size() < 3) throw std::invalid_argument(std::string(who) + ": need at least 3 observations");
}

std::optional<MemoryEstimate> residual_memory(std::span<const double> u, const RegressionOptions& opts) {
  try {
    return gph(u, opts.residual_q, opts.regressor);
  } catch (const NumericError&) {
    return std::nullopt;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

// Fills alpha, residuals, se_alpha and residual_d given beta and the band
// standard error of beta. xe is the regressor's band energy.
RegressionFit finish(Method method, std::span<const double> y, std::span<const double> x, double beta,
                     double se_beta, double xe, const RegressionOptions& opts) {
  RegressionFit f;
  f.method = method;
  f.beta = beta;
  const double xm = mean(x);
  f.alpha = mean(y) - beta * xm;
  f.residuals.resize(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) f.residuals[t] = y[t] - f.alpha - beta * x[t];
  f.se_beta = se_beta;
  f.se_alpha = se_beta * std::sqrt(xe + xm * xm);
  f.residual_d = residual_memory(f.residuals, opts);
  return f;
}

double fourier_weight(std::size_t j, std::size_t T) { return (T % 2 == 0 && j == T / 2) ? 1.0 : 2.0; }

// (2 pi / T) sum_{j in band} w_j Re I(lambda_j): the band's share of the
// sample (co)variance.
double band_energy(const Spectrum& s, FourierRange r) {
  double acc = 0.0;
  for (std::size_t j = r.lo; j <= r.hi; ++j) acc += fourier_weight(j, s.length) * s.at(j).real();
  return acc * 2.0 * std::numbers::pi / static_cast<double>(s.length);
}

double band_count(FourierRange r, std::size_t T) {
  double n = 0.0;
  for (std::size_t j = r.lo; j <= r.hi; ++j) n += fourier_weight(j, T);
  return n;
}

double band_se(double residual_energy, double regressor_energy, double n_eff) {
  if (n_eff <= 1.0) return std::numeric_limits<double>::quiet_NaN();
  return std::sqrt(residual_energy / (regressor_energy * (n_eff - 1.0)));
}

double fm_weight(double lambda, double theta) {
  return std::pow(2.0 * std::sin(lambda / 2.0), theta) * std::cos(theta * (std::numbers::pi - lambda) / 2.0);
}

double weighted_mean_weight(const Spectrum& s, FourierRange r, double theta) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = r.lo; j <= r.hi; ++j) {
    const double I = s.at(j).real();
    const double lam = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(s.length);
    num += I * fm_weight(lam, theta);
    den += I;
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace

std::string BandSpec::label() const {
  switch (kind) {
    case Kind::WaveletLevels:
      return std::to_string(static_cast<int>(lo)) + ":" + std::to_string(static_cast<int>(hi));
    case Kind::FourierExponents:
      return format_double(lo) + ":" + format_double(hi);
    case Kind::FourierIndices:
      return "[" + std::to_string(static_cast<std::size_t>(lo)) + "," + std::to_string(static_cast<std::size_t>(hi)) + "]";
  }
  return {};
}

FourierRange resolve_fourier(const BandSpec& band, std::size_t length) {
  FourierRange r;
  switch (band.kind) {
    case BandSpec::Kind::FourierExponents:
      if (!(band.lo >= 0.0 && band.lo <= band.hi && band.hi <= 1.0))
        throw std::invalid_argument("band: exponents must satisfy 0 <= a <= b <= 1");
      r.lo = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(length), band.lo)));
      r.hi = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(length), band.hi)));
      break;
    case BandSpec::Kind::FourierIndices:
      r.lo = static_cast<std::size_t>(band.lo);
      r.hi = static_cast<std::size_t>(band.hi);
      break;
    case BandSpec::Kind::WaveletLevels:
      throw std::invalid_argument("band: wavelet levels given where a Fourier band is required");
  }
  if (r.lo < 1 || r.lo > r.hi || r.hi > length / 2)
    throw std::invalid_argument("empty band: Fourier indices [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) +
                                "] outside 1.." + std::to_string(length / 2));
  return r;
}

std::string to_string(Method method) {
  switch (method) {
    case Method::OLS: return "ols";
    case Method::WBLS: return "wbls";
    case Method::NBLS: return "nbls";
    case Method::FMNBLS: return "fmnbls";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "ols") return Method::OLS;
  if (name == "wbls") return Method::WBLS;
  if (name == "nbls") return Method::NBLS;
  if (name == "fmnbls") return Method::FMNBLS;
  throw std::invalid_argument("unknown method '" + name + "'");
}

RegressionFit ols(std::span<const double> y, std::span<const double> x, const RegressionOptions& opts) {
  check_pair(y, x, "ols");
  const double T = static_cast<double>(x.size());
  const double xm = mean(x), ym = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    sxx += (x[t] - xm) * (x[t] - xm);
    sxy += (x[t] - xm) * (y[t] - ym);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("ols: zero variance regressor");
  const double beta = sxy / sxx;
  double rss = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    const double e = (y[t] - ym) - beta * (x[t] - xm);
    rss += e * e;
  }
  const double se_beta = std::sqrt(rss / (T - 2.0) / sxx);
  return finish(Method::OLS, y, x, beta, se_beta, sxx / T, opts);
}

RegressionFit wbls(std::span<const double> y, std::span<const double> x, const WblsConfig& c,
                   const RegressionOptions& opts) {
  check_pair(y, x, "wbls");
  if (c.k < 1 || c.k > c.l || c.l > c.levels)
    throw std::invalid_argument("wbls: band " + std::to_string(c.k) + ":" + std::to_string(c.l) + " outside 1.." +
                                std::to_string(c.levels));
  const auto filter = make_filter(c.filter);
  const auto xd = demean(x), yd = demean(y);
  const auto wx = modwt(xd, c.levels, filter);
  const auto wy = modwt(yd, c.levels, filter);
  const bool scaling = c.include_scaling && c.l == c.levels;
  double num = 0.0, den = 0.0;
  for (int j = c.k; j <= c.l; ++j) {
    num += wavelet_covariance(wx, wy, j, false).value;
    den += wavelet_variance(wx, j, false).value;
  }
  if (scaling) {
    num += scaling_covariance(wx, wy, false).value;
    den += scaling_variance(wx, false).value;
  }
  if (!(den > 0.0)) throw NumericError("wbls: regressor has no energy in the selected band");
  const double beta = num / den;

  std::vector<double> u(xd.size());
  for (std::size_t t = 0; t < u.size(); ++t) u[t] = yd[t] - beta * xd[t];
  const auto wu = modwt(u, c.levels, filter);
  const double T = static_cast<double>(x.size());
  double re = 0.0, n_eff = 0.0;
  for (int j = c.k; j <= c.l; ++j) {
    re += wavelet_variance(wu, j, false).value;
    n_eff += T / std::exp2(j);
  }
  if (scaling) {
    re += scaling_variance(wu, false).value;
    n_eff += T / std::exp2(c.levels) - 1.0;
  }
  auto fit = finish(Method::WBLS, y, x, beta, band_se(re, den, n_eff), den, opts);
  fit.band = BandSpec::levels(c.k, c.l);
  return fit;
}

RegressionFit nbls(std::span<const double> y, std::span<const double> x, const BandSpec& band,
                   const RegressionOptions& opts) {
  check_pair(y, x, "nbls");
  const auto r = resolve_fourier(band, x.size());
  const auto sx = periodogram(x);
  const auto sxy = periodogram(x, y);
  const double fx = band_energy(sx, r);
  if (!(fx > 0.0)) throw NumericError("nbls: regressor has no energy in the selected band");
  const double beta = band_energy(sxy, r) / fx;

  const auto xd = demean(x), yd = demean(y);
  std::vector<double> u(xd.size());
  for (std::size_t t = 0; t < u.size(); ++t) u[t] = yd[t] - beta * xd[t];
  const double re = band_energy(periodogram(u), r);
  auto fit = finish(Method::NBLS, y, x, beta, band_se(re, fx, band_count(r, x.size())), fx, opts);
  fit.band = band;
  return fit;
}

BandSpec default_aux_band() { return BandSpec::exponents(0.6, 0.8); }

RegressionFit fmnbls(std::span<const double> y, std::span<const double> x, const BandSpec& band,
                     const std::optional<BandSpec>& aux_band, const RegressionOptions& opts) {
  check_pair(y, x, "fmnbls");
  const BandSpec aux = aux_band.value_or(default_aux_band());
  const auto main_range = resolve_fourier(band, x.size());
  const auto aux_range = resolve_fourier(aux, x.size());
  if (aux_range.lo < main_range.lo)
    throw std::invalid_argument("fmnbls: auxiliary band must lie at higher frequencies than the main band");

  const auto base = nbls(y, x, band, opts);
  const double beta0 = base.beta;
  const auto u = demean(base.residuals);

  double gamma = 0.0;
  try {
    gamma = std::clamp(gph(u, 0.7, opts.regressor).d_hat, 0.0, 1.0);
  } catch (const NumericError&) {
  }
  const auto xd = demean(x);
  const auto du = frac_diff(u, gamma);
  const auto dx = frac_diff(xd, gamma);
  const double b = nbls(du, dx, aux, opts).beta;

  double theta = 0.0;
  try {
    theta = std::clamp(gph(x, 0.7, opts.regressor).d_hat - gamma, 0.0, 1.0);
  } catch (const NumericError&) {
  }
  const double w_main = weighted_mean_weight(periodogram(xd), main_range, theta);
  const double w_aux = weighted_mean_weight(periodogram(dx), aux_range, theta);
  double beta = beta0;
  if (w_aux - w_main > 1e-8) beta = beta0 - b * w_main / (w_aux - w_main);

  const auto yd = demean(y);
  std::vector<double> e(xd.size());
  for (std::size_t t = 0; t < e.size(); ++t) e[t] = yd[t] - beta * xd[t];
  const auto sx = periodogram(xd);
  const double fx = band_energy(sx, main_range);
  const double re = band_energy(periodogram(e), main_range);
  auto fit = finish(Method::FMNBLS, y, x, beta, band_se(re, fx, band_count(main_range, x.size())), fx, opts);
  fit.band = band;
  fit.gamma_used = gamma;
  return fit;
}

std::string regression_csv_header() { return "method,band,alpha,beta,se_alpha,se_beta,residual_d,residual_d_se\n"; }

std::string regression_csv_row(const RegressionFit& fit) {
  std::string row = to_string(fit.method) + "," + (fit.band ? fit.band->label() : std::string("full")) + "," +
                    format_double(fit.alpha) + "," + format_double(fit.beta) + "," + format_double(fit.se_alpha) +
                    "," + format_double(fit.se_beta) + ",";
  if (fit.residual_d) row += format_double(fit.residual_d->d_hat) + "," + format_double(fit.residual_d->se);
  else row += ",";
  return row + "\n";
}

}  // namespace specband
