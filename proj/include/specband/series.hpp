#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace specband {

/// How the integer timestamps of a series are to be read.
enum class TimeKind {
  Index,     ///< raw integer tick index (or seconds, for tick files)
  Date,      ///< days since 1970-01-01
  DateTime,  ///< milliseconds since 1970-01-01T00:00:00
};

/// Ordered, regularly observed values with strictly increasing timestamps.
///
/// The invariants (strictly increasing stamps, finite values, length >= 2)
/// are checked on construction; a constructed series is never modified.
class TimeSeries {
 public:
  TimeSeries(std::vector<std::int64_t> stamps, std::vector<double> values,
             TimeKind kind = TimeKind::Index, std::string unit = {});

  /// Series indexed 0, 1, ..., n-1.
  static TimeSeries from_values(std::vector<double> values, std::string unit = {});

  std::span<const double> values() const { return values_; }
  std::span<const std::int64_t> stamps() const { return stamps_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  TimeKind kind() const { return kind_; }
  const std::string& unit() const { return unit_; }

  /// Declared sampling interval: the median gap between timestamps.
  std::int64_t spacing() const { return spacing_; }

  /// Same timeline, new values (length must match).
  TimeSeries with_values(std::vector<double> values, std::string unit = {}) const;

 private:
  std::vector<std::int64_t> stamps_;
  std::vector<double> values_;
  TimeKind kind_;
  std::string unit_;
  std::int64_t spacing_ = 1;
};

/// Log-returns of a price series. Element i is the return over
/// (stamps[i], stamps[i+1]] of the parent; end_stamps() holds the latter.
class ReturnSeries {
 public:
  ReturnSeries(std::vector<double> values, std::vector<std::int64_t> end_stamps, TimeKind kind);

  std::span<const double> values() const { return values_; }
  std::span<const std::int64_t> end_stamps() const { return end_stamps_; }
  std::size_t size() const { return values_.size(); }
  TimeKind kind() const { return kind_; }

 private:
  std::vector<double> values_;
  std::vector<std::int64_t> end_stamps_;
  TimeKind kind_;
};

/// Inclusive calendar window [start, end] in the series' timestamp units.
struct Interval {
  std::int64_t start;
  std::int64_t end;
};

/// values[i] = ln(p[i+1]) - ln(p[i]). Throws on non-positive prices.
ReturnSeries log_returns(const TimeSeries& prices);
std::vector<double> log_returns(std::span<const double> prices);

/// Applies (1 - L)^d through the full truncated binomial expansion
///   pi_0 = 1, pi_k = pi_{k-1} (k - 1 - d) / k,  y_t = sum_{k=0}^{t} pi_k x_{t-k}.
/// Output has the input's length. Early samples see a short filter and are
/// inaccurate for non-integer d; callers discard a burn-in prefix.
std::vector<double> frac_diff(std::span<const double> x, double d);
TimeSeries frac_diff(const TimeSeries& series, double d);

/// Expansion weights pi_0..pi_{n-1} used by frac_diff.
std::vector<double> frac_diff_weights(std::size_t n, double d);

/// Sums the observations falling in each window (variance is additive over
/// disjoint intervals). Windows must be sorted and non-overlapping, lie
/// inside the data range, and each hold at least one observation.
std::vector<double> aggregate_interval(const TimeSeries& daily, std::span<const Interval> windows);

/// aggregate_interval as a series stamped at each window's end; needs at
/// least two windows.
TimeSeries aggregate_series(const TimeSeries& daily, std::span<const Interval> windows);

std::vector<double> demean(std::span<const double> x);
TimeSeries demean(const TimeSeries& series);

double mean(std::span<const double> x);

// Timestamp text conversion. Accepted forms: integer, YYYY-MM-DD,
// YYYY-MM-DDTHH:MM:SS[.fff] (a space may replace the 'T').
struct ParsedStamp {
  std::int64_t value;
  TimeKind kind;
};
ParsedStamp parse_timestamp(const std::string& text);
std::string format_timestamp(std::int64_t value, TimeKind kind);

}  // namespace specband
