#include "specband/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "specband/csv.hpp"

namespace specband {

namespace {

constexpr double kLeft = 60, kTop = 30, kWidth = 720, kHeight = 360;
constexpr std::size_t kMaxColumns = 256;
constexpr std::size_t kArrowGrid = 32;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Piecewise-linear ramp from dark blue through teal to yellow.
std::string colour(double r2) {
  static constexpr std::array<std::array<double, 3>, 5> stops{{
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  const double v = std::clamp(r2, 0.0, 1.0) * (stops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(v), stops.size() - 2);
  const double f = v - static_cast<double>(i);
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
  return buf;
}

}  // namespace

std::string render_coherence_svg(const CoherenceResult& r, const std::string& title) {
  const std::size_t T = r.length();
  const std::size_t S = r.scales.size();
  const std::size_t cols = std::min(T, kMaxColumns);
  const double cw = kWidth / static_cast<double>(cols);
  const double rh = kHeight / static_cast<double>(S);
  auto col_range = [&](std::size_t c) {
    return std::pair{c * T / cols, (c + 1) * T / cols};
  };

  // Column-binned r2 and significance.
  Grid<double> r2(S, cols);
  Grid<int> sig(S, cols);
  for (std::size_t j = 0; j < S; ++j)
    for (std::size_t c = 0; c < cols; ++c) {
      const auto [a, b] = col_range(c);
      double acc = 0.0;
      std::size_t hits = 0;
      for (std::size_t t = a; t < b; ++t) {
        acc += r.r2(j, t);
        if (r.threshold && r.r2(j, t) > (*r.threshold)(j, t)) ++hits;
      }
      r2(j, c) = acc / static_cast<double>(b - a);
      sig(j, c) = 2 * hits > (b - a) ? 1 : 0;
    }

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kLeft + kWidth + 80) + "\" height=\"" +
       num(kTop + kHeight + 50) + "\">\n";
  s += "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" "
       "patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#ffffff\" "
       "stroke-width=\"1.5\"/></pattern></defs>\n";
  if (!title.empty()) s += "<text x=\"" + num(kLeft) + "\" y=\"18\" font-size=\"14\">" + title + "</text>\n";

  s += "<g id=\"r2\" shape-rendering=\"crispEdges\">\n";
  for (std::size_t j = 0; j < S; ++j)
    for (std::size_t c = 0; c < cols; ++c)
      s += "<rect x=\"" + num(kLeft + c * cw) + "\" y=\"" + num(kTop + j * rh) + "\" width=\"" + num(cw + 0.05) +
           "\" height=\"" + num(rh + 0.05) + "\" fill=\"" + colour(r2(j, c)) + "\"/>\n";
  s += "</g>\n";

  // Cone of influence: region below the coi curve (larger scales).
  const double lmin = std::log2(r.scales.front()), lmax = std::log2(r.scales.back());
  const double lstep = S > 1 ? (lmax - lmin) / static_cast<double>(S - 1) : 1.0;
  auto scale_y = [&](double scale) {
    const double l = std::log2(std::max(scale, 1e-300));
    const double pos = (l - lmin) / lstep + 0.5;
    return kTop + std::clamp(pos, 0.0, static_cast<double>(S)) * rh;
  };
  s += "<path id=\"coi\" fill=\"url(#hatch)\" fill-opacity=\"0.6\" stroke=\"#ffffff\" d=\"M" + num(kLeft) + "," +
       num(kTop + kHeight);
  for (std::size_t c = 0; c < cols; ++c) {
    const auto [a, b] = col_range(c);
    const double coi = r.coi[(a + b - 1) / 2];
    s += " L" + num(kLeft + (c + 0.5) * cw) + "," + num(scale_y(coi));
  }
  s += " L" + num(kLeft + kWidth) + "," + num(kTop + kHeight) + " Z\"/>\n";

  if (r.threshold) {
    s += "<path id=\"significance\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.2\" d=\"";
    for (std::size_t j = 0; j < S; ++j)
      for (std::size_t c = 0; c < cols; ++c) {
        if (!sig(j, c)) continue;
        const double x0 = kLeft + c * cw, x1 = x0 + cw, y0 = kTop + j * rh, y1 = y0 + rh;
        if (j == 0 || !sig(j - 1, c)) s += "M" + num(x0) + "," + num(y0) + "H" + num(x1);
        if (j + 1 == S || !sig(j + 1, c)) s += "M" + num(x0) + "," + num(y1) + "H" + num(x1);
        if (c == 0 || !sig(j, c - 1)) s += "M" + num(x0) + "," + num(y0) + "V" + num(y1);
        if (c + 1 == cols || !sig(j, c + 1)) s += "M" + num(x1) + "," + num(y0) + "V" + num(y1);
      }
    s += "\"/>\n";
  }

  const std::size_t ax = std::min(T, kArrowGrid), ay = std::min(S, kArrowGrid);
  const double len = 0.35 * std::min(kWidth / ax, kHeight / ay);
  s += "<g id=\"phase\" stroke=\"#000000\" stroke-width=\"0.8\">\n";
  for (std::size_t a = 0; a < ay; ++a)
    for (std::size_t b = 0; b < ax; ++b) {
      const std::size_t j = (2 * a + 1) * S / (2 * ay);
      const std::size_t t = (2 * b + 1) * T / (2 * ax);
      if (r.r2(j, t) < 0.5) continue;
      const double cx = kLeft + (static_cast<double>(t) + 0.5) * kWidth / static_cast<double>(T);
      const double cy = kTop + (static_cast<double>(j) + 0.5) * rh;
      const double ph = r.phase(j, t);
      const double dx = len * std::cos(ph), dy = -len * std::sin(ph);
      const double hx = cx + dx, hy = cy + dy;
      const double back = ph + std::numbers::pi;
      s += "<path d=\"M" + num(cx - dx) + "," + num(cy - dy) + "L" + num(hx) + "," + num(hy) + "M" +
           num(hx + 0.5 * len * std::cos(back + 0.5)) + "," + num(hy - 0.5 * len * std::sin(back + 0.5)) + "L" +
           num(hx) + "," + num(hy) + "L" + num(hx + 0.5 * len * std::cos(back - 0.5)) + "," +
           num(hy - 0.5 * len * std::sin(back - 0.5)) + "\"/>\n";
    }
  s += "</g>\n";

  s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
       "\" fill=\"none\" stroke=\"#000000\"/>\n";
  for (int p = static_cast<int>(std::ceil(lmin)); p <= static_cast<int>(std::floor(lmax)); ++p)
    s += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(scale_y(std::exp2(p)) + 4) +
         "\" font-size=\"10\" text-anchor=\"end\">" + format_double(std::exp2(p)) + "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double t = (T - 1) * k / 4.0;
    s += "<text x=\"" + num(kLeft + (t + 0.5) * kWidth / static_cast<double>(T)) + "\" y=\"" +
         num(kTop + kHeight + 14) + "\" font-size=\"10\" text-anchor=\"middle\">" + num(t * r.dt) + "</text>\n";
  }
  s += "<text x=\"" + num(kLeft + kWidth / 2) + "\" y=\"" + num(kTop + kHeight + 32) +
       "\" font-size=\"11\" text-anchor=\"middle\">time</text>\n";
  s += "<text x=\"14\" y=\"" + num(kTop + kHeight / 2) + "\" font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
       num(kTop + kHeight / 2) + ")\">scale</text>\n";
  for (int k = 0; k <= 10; ++k) {
    const double v = k / 10.0;
    s += "<rect x=\"" + num(kLeft + kWidth + 20) + "\" y=\"" + num(kTop + kHeight - (k + 1) * kHeight / 11) +
         "\" width=\"16\" height=\"" + num(kHeight / 11 + 0.05) + "\" fill=\"" + colour(v) + "\"/>\n";
  }
  s += "<text x=\"" + num(kLeft + kWidth + 40) + "\" y=\"" + num(kTop + 10) + "\" font-size=\"10\">1</text>\n";
  s += "<text x=\"" + num(kLeft + kWidth + 40) + "\" y=\"" + num(kTop + kHeight) + "\" font-size=\"10\">0</text>\n";
  s += "</svg>\n";
  return s;
}

void emit_plot(const CoherenceResult& result, const std::filesystem::path& path, const std::string& title) {
  write_file_atomic(path, render_coherence_svg(result, title));
}

}  // namespace specband
