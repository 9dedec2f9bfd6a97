#include "specband/implied.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "specband/csv.hpp"
#include "specband/error.hpp"
#include "specband/series.hpp"

namespace specband {

namespace {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double intrinsic(double F, double K, OptionType type) {
  return type == OptionType::Call ? std::max(0.0, F - K) : std::max(0.0, K - F);
}

// Integrand of the variance integrals at strike K (non-negative by
// construction; the K -> 0 limit is 0).
double variance_integrand(const VolCurve& c, double K) {
  if (K <= 0.0) return 0.0;
  const double excess = c.call_price(K) - std::max(0.0, c.forward - K);
  return std::max(0.0, excess) / (K * K);
}

double atm_sd(const VolCurve& c) { return c.forward * c.vol(c.forward) * std::sqrt(c.tau); }

}  // namespace

double OptionChain::forward() const { return spot * std::exp(rate * tau); }

void OptionChain::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("option chain: tau must be positive");
  if (!(spot > 0.0) || !(forward() > 0.0)) throw std::invalid_argument("option chain: forward must be positive");
  for (const auto& r : records)
    if (!(r.strike > 0.0)) throw std::invalid_argument("option chain: strikes must be positive");
}

OptionChain filter_chain(const OptionChain& raw, const ChainFilter& f) {
  raw.validate();
  OptionChain out = raw;
  out.records.clear();
  const bool long_enough = raw.tau * 365.0 >= f.min_days - 1e-9;
  if (long_enough) {
    for (const auto& r : raw.records) {
      if (r.mid < f.min_price) continue;
      if (r.mid < intrinsic(raw.spot, r.strike, r.type)) continue;
      if (r.type == OptionType::Call && !(r.strike > raw.spot)) continue;
      if (r.type == OptionType::Put && !(r.strike < raw.spot)) continue;
      out.records.push_back(r);
    }
  }
  if (out.records.size() < f.min_count)
    throw std::invalid_argument("filter_chain: only " + std::to_string(out.records.size()) +
                                " records survive (need " + std::to_string(f.min_count) + ")");
  return out;
}

double bs_price(double F, double K, double sigma, double tau, OptionType type) {
  if (!(F > 0.0) || !(K > 0.0) || !(tau > 0.0)) throw std::invalid_argument("bs_price: F, K and tau must be positive");
  if (sigma < 0.0) throw std::invalid_argument("bs_price: negative volatility");
  const double sd = sigma * std::sqrt(tau);
  if (sd == 0.0) return intrinsic(F, K, type);
  const double d1 = (std::log(F / K) + 0.5 * sd * sd) / sd;
  const double d2 = d1 - sd;
  if (type == OptionType::Call) return F * norm_cdf(d1) - K * norm_cdf(d2);
  return K * norm_cdf(-d2) - F * norm_cdf(-d1);
}

double bs_implied_vol(double price, double F, double K, double tau, OptionType type) {
  const double lower = intrinsic(F, K, type);
  const double upper = type == OptionType::Call ? F : K;
  if (!(price >= lower && price <= upper))
    throw std::invalid_argument("bs_implied_vol: price outside no-arbitrage bounds");
  double lo = 1e-6, hi = 5.0;
  if (price <= bs_price(F, K, lo, tau, type)) return lo;
  if (price > bs_price(F, K, hi, tau, type)) throw NumericError("bs_implied_vol: volatility above 5");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (bs_price(F, K, mid, tau, type) < price) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

NaturalSpline::NaturalSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n != y_.size() || n < 2) throw std::invalid_argument("spline: need at least two knots");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("spline: knots must be strictly increasing");
  m_.assign(n, 0.0);
  if (n == 2) return;
  // Tridiagonal system for the interior second derivatives.
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    if (i > 1) {
      const double w = h0 / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

double NaturalSpline::operator()(double at) const {
  if (at <= x_.front()) return y_.front();
  if (at >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), at);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - at) / h, b = (at - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double VolCurve::call_price(double K) const { return bs_price(forward, K, vol(K), tau, OptionType::Call); }

VolCurve make_vol_curve(std::vector<double> strikes, std::vector<double> vols, double forward, double tau) {
  if (!(forward > 0.0) || !(tau > 0.0)) throw std::invalid_argument("vol curve: forward and tau must be positive");
  for (double v : vols)
    if (!(v > 0.0)) throw std::invalid_argument("vol curve: vols must be positive");
  VolCurve c;
  c.spline = NaturalSpline(std::move(strikes), std::move(vols));
  c.forward = forward;
  c.tau = tau;
  return c;
}

VolCurve fit_vol_curve(const OptionChain& chain) {
  chain.validate();
  const double F = chain.forward();
  const double growth = std::exp(chain.rate * chain.tau);
  std::vector<std::pair<double, double>> knots;
  for (const auto& r : chain.records) {
    double v = 0.0;
    try {
      v = bs_implied_vol(r.mid * growth, F, r.strike, chain.tau, r.type);
    } catch (const std::exception& e) {
      throw NumericError(std::string("fit_vol_curve: inversion failed at strike ") + format_double(r.strike) + ": " +
                         e.what());
    }
    knots.emplace_back(r.strike, v);
  }
  std::sort(knots.begin(), knots.end());
  std::vector<double> ks, vs;
  for (const auto& [k, v] : knots) {
    if (!ks.empty() && k == ks.back()) throw std::invalid_argument("fit_vol_curve: duplicate strike " + format_double(k));
    ks.push_back(k);
    vs.push_back(v);
  }
  return make_vol_curve(std::move(ks), std::move(vs), F, chain.tau);
}

double integrate_variance(const VolCurve& curve, double lo, double hi) {
  if (!(lo >= 0.0) || !(hi > lo)) throw std::invalid_argument("empty integration range");
  auto node = [&](double k) { return variance_integrand(curve, k); };
  auto interp = [&](double at) {
    const double k0 = std::floor(at);
    const double g0 = node(k0);
    if (at == k0) return g0;
    return g0 + (at - k0) * (node(k0 + 1.0) - g0);
  };
  double prev_x = lo, prev_g = interp(lo);
  double acc = 0.0;
  for (double k = std::floor(lo) + 1.0; k < hi; k += 1.0) {
    const double g = node(k);
    acc += 0.5 * (prev_g + g) * (k - prev_x);
    prev_x = k;
    prev_g = g;
  }
  acc += 0.5 * (prev_g + interp(hi)) * (hi - prev_x);
  return 2.0 * acc;
}

double mfiv(const VolCurve& curve, double sd_mult) {
  if (!(sd_mult > 0.0)) throw std::invalid_argument("mfiv: sd_mult must be positive");
  const double sd = sd_mult * atm_sd(curve);
  const double lo = std::max(curve.forward - sd, 1e-8 * curve.forward);
  const double hi = curve.forward + sd;
  return integrate_variance(curve, lo, hi);
}

std::vector<double> rnd_quantiles(const VolCurve& curve, std::span<const double> probs) {
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] > 0.0 && probs[i] < 1.0)) throw std::invalid_argument("rnd_quantiles: probabilities must lie in (0, 1)");
    if (i > 0 && probs[i] < probs[i - 1]) throw std::invalid_argument("rnd_quantiles: probabilities must be sorted");
  }
  const double sd = 5.0 * atm_sd(curve);
  const double lo = std::max(1.0, std::floor(std::min(curve.k_min(), curve.forward - sd)));
  const double hi = std::ceil(std::max(curve.k_max(), curve.forward + sd));
  const auto n = static_cast<std::size_t>(hi - lo) + 1;
  std::vector<double> strikes(n), density(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double K = lo + static_cast<double>(i);
    strikes[i] = K;
    const double d = curve.call_price(K - 1.0 > 0.0 ? K - 1.0 : K) - 2.0 * curve.call_price(K) + curve.call_price(K + 1.0);
    density[i] = K - 1.0 > 0.0 ? std::max(0.0, d) : 0.0;
  }
  std::vector<double> cdf(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) cdf[i] = cdf[i - 1] + 0.5 * (density[i - 1] + density[i]);
  const double mass = cdf.back();
  if (!(mass > 0.0)) throw NumericError("rnd_quantiles: degenerate density (total mass 0)");
  for (double& c : cdf) c /= mass;

  std::vector<double> out;
  out.reserve(probs.size());
  for (double p : probs) {
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), p);
    const std::size_t i = static_cast<std::size_t>(it - cdf.begin());
    if (i == 0) {
      out.push_back(strikes.front());
      continue;
    }
    const double c0 = cdf[i - 1], c1 = cdf[i];
    out.push_back(strikes[i - 1] + (c1 > c0 ? (p - c0) / (c1 - c0) : 0.0));
  }
  return out;
}

double civ(const VolCurve& curve, const CorridorSpec& corridor) {
  double b1 = corridor.lo, b2 = corridor.hi;
  if (corridor.kind == CorridorSpec::Kind::Percentiles) {
    const double probs[2] = {corridor.lo, corridor.hi};
    const auto q = rnd_quantiles(curve, probs);
    b1 = q[0];
    b2 = q[1];
  } else if (b1 < 0.0) {
    throw std::invalid_argument("civ: barriers must be non-negative");
  }
  if (!(b1 < b2)) throw std::invalid_argument("civ: B1 must lie below B2");
  return integrate_variance(curve, b1, b2);
}

std::vector<OptionChain> load_chains(const std::filesystem::path& path) {
  const auto table = read_csv_table(path);
  const std::size_t cq = table.column("quote_date"), ce = table.column("expiry"), ck = table.column("strike"),
                    ct = table.column("type"), cm = table.column("mid"), cs = table.column("spot"),
                    cr = table.column("rate");
  std::map<std::pair<std::int64_t, std::int64_t>, OptionChain> groups;
  for (const auto& row : table.rows) {
    const auto q = parse_timestamp(row[cq]).value;
    const auto e = parse_timestamp(row[ce]).value;
    auto& chain = groups[{q, e}];
    chain.quote_date = q;
    chain.expiry = e;
    chain.tau = static_cast<double>(e - q) / 365.0;
    chain.spot = parse_double(row[cs]);
    chain.rate = parse_double(row[cr]);
    OptionRecord rec;
    rec.strike = parse_double(row[ck]);
    const std::string& t = row[ct];
    if (t == "C" || t == "c" || t == "call") rec.type = OptionType::Call;
    else if (t == "P" || t == "p" || t == "put") rec.type = OptionType::Put;
    else throw std::invalid_argument("option chain: unknown option type '" + t + "'");
    rec.mid = parse_double(row[cm]);
    chain.records.push_back(rec);
  }
  std::vector<OptionChain> out;
  for (auto& [key, chain] : groups) out.push_back(std::move(chain));
  return out;
}

}  // namespace specband
