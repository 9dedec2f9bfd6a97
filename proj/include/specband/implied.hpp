#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace specband {

enum class OptionType { Call, Put };

struct OptionRecord {
  double strike = 0.0;
  OptionType type = OptionType::Call;
  double mid = 0.0;
};

struct OptionChain {
  std::int64_t quote_date = 0;  ///< days since epoch
  std::int64_t expiry = 0;
  double tau = 0.0;             ///< year fraction
  double spot = 0.0;
  double rate = 0.0;
  std::vector<OptionRecord> records;

  double forward() const;  ///< S e^{r tau}
  void validate() const;
};

struct ChainFilter {
  double min_days = 7.0;
  double min_price = 0.375;
  std::size_t min_count = 6;
};

/// Drops short-dated, cheap, arbitrage-violating and in-the-money quotes;
/// throws std::invalid_argument when fewer than min_count survive.
OptionChain filter_chain(const OptionChain& raw, const ChainFilter& filter = {});

/// Undiscounted Black price on the forward.
double bs_price(double F, double K, double sigma, double tau, OptionType type);

/// Bisection on sigma in [1e-6, 5]. Throws std::invalid_argument when the
/// price lies outside [intrinsic, F] (calls) or [intrinsic, K] (puts).
double bs_implied_vol(double price, double F, double K, double tau, OptionType type);

/// Natural cubic spline, flat outside the knot range.
class NaturalSpline {
 public:
  NaturalSpline() = default;
  NaturalSpline(std::vector<double> x, std::vector<double> y);
  double operator()(double at) const;
  std::span<const double> knots() const { return x_; }
  std::span<const double> values() const { return y_; }

 private:
  std::vector<double> x_, y_, m_;
};

struct VolCurve {
  NaturalSpline spline;
  double forward = 0.0;
  double tau = 0.0;

  double k_min() const { return spline.knots().front(); }
  double k_max() const { return spline.knots().back(); }
  double vol(double K) const { return spline(K); }
  double call_price(double K) const;
};

/// Knots from Black inversion of forward-valued mids (mid e^{r tau}); puts
/// enter through the put formula.
VolCurve fit_vol_curve(const OptionChain& chain);

/// Curve from explicit knots.
VolCurve make_vol_curve(std::vector<double> strikes, std::vector<double> vols, double forward, double tau);

/// 2 * integral over [lo, hi] of the linear interpolant of
/// (C(K) - max(0, F - K)) / K^2 through the integer strikes.
double integrate_variance(const VolCurve& curve, double lo, double hi);

/// Range F (1 -/+ sd_mult sigma_atm sqrt(tau)), sigma_atm = vol(F); the
/// lower end is kept positive.
double mfiv(const VolCurve& curve, double sd_mult = 1.0);

/// Strikes at the given cumulative probabilities of the second-difference
/// risk-neutral density.
std::vector<double> rnd_quantiles(const VolCurve& curve, std::span<const double> probs);

struct CorridorSpec {
  enum class Kind { Barriers, Percentiles };
  Kind kind = Kind::Barriers;
  double lo = 0.0;
  double hi = 0.0;

  static CorridorSpec barriers(double b1, double b2) { return {Kind::Barriers, b1, b2}; }
  static CorridorSpec percentiles(double p1, double p2) { return {Kind::Percentiles, p1, p2}; }
  static CorridorSpec civ1() { return percentiles(0.05, 0.95); }
  static CorridorSpec civ2() { return percentiles(0.025, 0.975); }
};

double civ(const VolCurve& curve, const CorridorSpec& corridor);

/// Reads (quote_date, expiry, strike, type, mid, spot, rate) rows and groups
/// them into one chain per (quote_date, expiry), ordered by both.
std::vector<OptionChain> load_chains(const std::filesystem::path& path);

}  // namespace specband
