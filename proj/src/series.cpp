#include "specband/series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace specband {

namespace {

void check_series_invariants(std::span<const std::int64_t> stamps, std::span<const double> values) {
  if (stamps.size() != values.size())
    throw std::invalid_argument("time series: timestamp and value counts differ");
  if (values.size() < 2) throw std::invalid_argument("time series: length must be at least 2");
  for (std::size_t i = 1; i < stamps.size(); ++i) {
    if (stamps[i] == stamps[i - 1]) throw std::invalid_argument("duplicate timestamps");
    if (stamps[i] < stamps[i - 1]) throw std::invalid_argument("unsorted timestamps");
  }
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("time series: non-finite value");
}

std::int64_t median_gap(std::span<const std::int64_t> stamps) {
  std::vector<std::int64_t> gaps(stamps.size() - 1);
  for (std::size_t i = 1; i < stamps.size(); ++i) gaps[i - 1] = stamps[i] - stamps[i - 1];
  auto mid = gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2);
  std::nth_element(gaps.begin(), mid, gaps.end());
  return *mid;
}

}  // namespace

TimeSeries::TimeSeries(std::vector<std::int64_t> stamps, std::vector<double> values, TimeKind kind,
                       std::string unit)
    : stamps_(std::move(stamps)), values_(std::move(values)), kind_(kind), unit_(std::move(unit)) {
  check_series_invariants(stamps_, values_);
  spacing_ = median_gap(stamps_);
}

TimeSeries TimeSeries::from_values(std::vector<double> values, std::string unit) {
  std::vector<std::int64_t> stamps(values.size());
  std::iota(stamps.begin(), stamps.end(), std::int64_t{0});
  return TimeSeries(std::move(stamps), std::move(values), TimeKind::Index, std::move(unit));
}

TimeSeries TimeSeries::with_values(std::vector<double> values, std::string unit) const {
  return TimeSeries(stamps_, std::move(values), kind_, unit.empty() ? unit_ : std::move(unit));
}

ReturnSeries::ReturnSeries(std::vector<double> values, std::vector<std::int64_t> end_stamps,
                           TimeKind kind)
    : values_(std::move(values)), end_stamps_(std::move(end_stamps)), kind_(kind) {
  if (values_.size() != end_stamps_.size())
    throw std::invalid_argument("return series: timestamp and value counts differ");
}

std::vector<double> log_returns(std::span<const double> prices) {
  for (double p : prices)
    if (!(p > 0.0)) throw std::invalid_argument("log_returns: non-positive price");
  std::vector<double> r;
  if (prices.size() < 2) return r;
  r.reserve(prices.size() - 1);
  for (std::size_t i = 1; i < prices.size(); ++i) r.push_back(std::log(prices[i]) - std::log(prices[i - 1]));
  return r;
}

ReturnSeries log_returns(const TimeSeries& prices) {
  auto r = log_returns(prices.values());
  std::vector<std::int64_t> ends(prices.stamps().begin() + 1, prices.stamps().end());
  return ReturnSeries(std::move(r), std::move(ends), prices.kind());
}

std::vector<double> frac_diff_weights(std::size_t n, double d) {
  std::vector<double> pi(n);
  if (n == 0) return pi;
  pi[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) pi[k] = pi[k - 1] * (static_cast<double>(k) - 1.0 - d) / static_cast<double>(k);
  return pi;
}

std::vector<double> frac_diff(std::span<const double> x, double d) {
  if (std::abs(d) > 2.0) throw std::invalid_argument("frac_diff: |d| must not exceed 2");
  if (x.size() < 2) throw std::invalid_argument("frac_diff: series length must be at least 2");
  const std::size_t n = x.size();
  if (d == 0.0) return {x.begin(), x.end()};
  const auto pi = frac_diff_weights(n, d);
  // Integer orders have finitely many nonzero weights.
  std::size_t support = n;
  if (d > 0.0 && d == std::floor(d)) support = std::min(n, static_cast<std::size_t>(d) + 1);
  std::vector<double> y(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t kmax = std::min(t + 1, support);
    double acc = 0.0;
    for (std::size_t k = 0; k < kmax; ++k) acc += pi[k] * x[t - k];
    y[t] = acc;
  }
  return y;
}

TimeSeries frac_diff(const TimeSeries& series, double d) {
  return series.with_values(frac_diff(series.values(), d));
}

std::vector<double> aggregate_interval(const TimeSeries& daily, std::span<const Interval> windows) {
  if (windows.empty()) throw std::invalid_argument("aggregate_interval: no windows");
  const auto stamps = daily.stamps();
  const auto values = daily.values();
  std::vector<double> sums;
  sums.reserve(windows.size());
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const auto& win = windows[w];
    if (win.start > win.end) throw std::invalid_argument("aggregate_interval: window start after end");
    if (w > 0 && win.start <= windows[w - 1].end)
      throw std::invalid_argument("aggregate_interval: windows overlap or are unsorted");
    if (win.start < stamps.front() || win.end > stamps.back())
      throw std::invalid_argument("aggregate_interval: window with no covering data");
    auto lo = std::lower_bound(stamps.begin(), stamps.end(), win.start);
    auto hi = std::upper_bound(stamps.begin(), stamps.end(), win.end);
    if (lo == hi) throw std::invalid_argument("aggregate_interval: window with no covering data");
    double sum = 0.0;
    for (auto it = lo; it != hi; ++it) sum += values[static_cast<std::size_t>(it - stamps.begin())];
    sums.push_back(sum);
  }
  return sums;
}

TimeSeries aggregate_series(const TimeSeries& daily, std::span<const Interval> windows) {
  auto sums = aggregate_interval(daily, windows);
  std::vector<std::int64_t> stamps;
  stamps.reserve(windows.size());
  for (const auto& w : windows) stamps.push_back(w.end);
  return TimeSeries(std::move(stamps), std::move(sums), daily.kind(), daily.unit());
}

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

std::vector<double> demean(std::span<const double> x) {
  const double m = mean(x);
  std::vector<double> y(x.begin(), x.end());
  for (double& v : y) v -= m;
  // A second pass removes the rounding residue of the first.
  const double r = mean(y);
  for (double& v : y) v -= r;
  return y;
}

TimeSeries demean(const TimeSeries& series) { return series.with_values(demean(series.values())); }

ParsedStamp parse_timestamp(const std::string& text) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (text.empty()) throw std::invalid_argument("empty timestamp");
  std::int64_t iv = 0;
  if (auto [p, ec] = std::from_chars(first, last, iv); ec == std::errc() && p == last)
    return {iv, TimeKind::Index};

  int y = 0, mo = 0, d = 0, hh = 0, mm = 0, ss = 0, consumed = 0;
  if (std::sscanf(text.c_str(), "%4d-%2d-%2d%n", &y, &mo, &d, &consumed) != 3 || consumed != 10)
    throw std::invalid_argument("unparseable timestamp '" + text + "'");
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw std::invalid_argument("invalid calendar date '" + text + "'");
  const std::int64_t days = sys_days{ymd}.time_since_epoch().count();
  if (text.size() == 10) return {days, TimeKind::Date};

  const char sep = text[10];
  if (sep != 'T' && sep != ' ') throw std::invalid_argument("unparseable timestamp '" + text + "'");
  int rest = 0;
  if (std::sscanf(text.c_str() + 11, "%2d:%2d:%2d%n", &hh, &mm, &ss, &rest) != 3 || rest != 8)
    throw std::invalid_argument("unparseable timestamp '" + text + "'");
  if (hh > 23 || mm > 59 || ss > 60) throw std::invalid_argument("invalid time of day '" + text + "'");
  std::int64_t millis = 0;
  std::size_t pos = 19;
  if (pos < text.size()) {
    if (text[pos] != '.') throw std::invalid_argument("unparseable timestamp '" + text + "'");
    ++pos;
    int digits = 0;
    while (pos < text.size() && digits < 3 && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      millis = millis * 10 + (text[pos] - '0');
      ++pos;
      ++digits;
    }
    if (digits == 0 || pos != text.size()) throw std::invalid_argument("unparseable timestamp '" + text + "'");
    while (digits++ < 3) millis *= 10;
  }
  const std::int64_t total = ((days * 24 + hh) * 60 + mm) * 60 + ss;
  return {total * 1000 + millis, TimeKind::DateTime};
}

std::string format_timestamp(std::int64_t value, TimeKind kind) {
  using namespace std::chrono;
  char buf[40];
  switch (kind) {
    case TimeKind::Index:
      return std::to_string(value);
    case TimeKind::Date: {
      const year_month_day ymd{sys_days{days{value}}};
      std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                    static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
      return buf;
    }
    case TimeKind::DateTime: {
      std::int64_t ms = value;
      std::int64_t secs = ms >= 0 ? ms / 1000 : -((-ms + 999) / 1000);
      ms -= secs * 1000;
      std::int64_t dcount = secs >= 0 ? secs / 86400 : -((-secs + 86399) / 86400);
      std::int64_t sod = secs - dcount * 86400;
      const year_month_day ymd{sys_days{days{dcount}}};
      const int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(ymd.year()),
                                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                                  static_cast<int>(sod / 3600), static_cast<int>((sod / 60) % 60),
                                  static_cast<int>(sod % 60));
      if (ms != 0) std::snprintf(buf + n, sizeof buf - static_cast<std::size_t>(n), ".%03d", static_cast<int>(ms));
      return buf;
    }
  }
  return std::to_string(value);
}

}  // namespace specband
