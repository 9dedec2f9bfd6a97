#include <cmath>
#include <cstdlib>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "specband/cwt.hpp"
#include "specband/plot.hpp"
#include "specband/random.hpp"

using namespace specband;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<double> gaussian(std::size_t n, std::uint64_t seed, std::uint64_t stream = 0) {
  RandomStream rng(seed, stream);
  std::vector<double> x(n);
  for (double& v : x) v = rng.normal();
  return x;
}

}  // namespace

TEST_CASE("scale grid") {
  const auto s = make_scales(512, {});
  CHECK(s.front() == 2.0);
  CHECK(s.back() <= 256.0 * (1 + 1e-12));
  CHECK(s.size() == 12 * 7 + 1);
  for (std::size_t j = 1; j < s.size(); ++j) CHECK_THAT(s[j] / s[j - 1], WithinAbs(std::exp2(1.0 / 12), 1e-12));
  ScaleSpec bad;
  bad.dj = 0.0;
  CHECK_THROWS_AS(make_scales(512, bad), std::invalid_argument);
  ScaleSpec too_wide;
  too_wide.s_max = 400;
  CHECK_THROWS_AS(make_scales(512, too_wide), std::invalid_argument);
  ScaleSpec narrow;
  narrow.s0 = 2.0;
  narrow.s_max = 2.05;
  CHECK_THROWS_AS(make_scales(512, narrow), std::invalid_argument);
}

TEST_CASE("zero series gives a zero field") {
  const auto f = cwt_morlet(std::vector<double>(128, 0.0));
  for (const auto& c : f.coefficients.data) REQUIRE(std::abs(c) == 0.0);
  CHECK_THROWS_AS(cwt_morlet(std::vector<double>(7, 1.0)), std::invalid_argument);
}

TEST_CASE("a cosine peaks at its Fourier-equivalent scale") {
  const double P = 64.0;
  std::vector<double> x(1024);
  for (std::size_t t = 0; t < x.size(); ++t) x[t] = std::cos(2 * std::numbers::pi * t / P);
  const auto f = cwt_morlet(x);
  const double expected = P / 1.033;
  CHECK_THAT(f.fourier_period(expected), WithinAbs(P, 0.05));
  const double step = std::exp2(1.0 / 12);
  for (std::size_t t = 200; t < 824; t += 53) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < f.scales.size(); ++j)
      if (std::abs(f.coefficients(j, t)) > std::abs(f.coefficients(best, t))) best = j;
    const double ratio = f.scales[best] / expected;
    CHECK(ratio < step);
    CHECK(ratio > 1.0 / step);
  }
}

TEST_CASE("an impulse response is concentrated around the impulse") {
  // |W(t)|^2 follows exp(-(t - t0)^2 / s^2), so the mass beyond sqrt(2) s is
  // erfc(sqrt 2) ~ 4.55% and beyond 2 s is erfc(2) ~ 0.47%. Integer lags make
  // the first cut coarse at small scales.
  const std::size_t T = 1024, t0 = 512;
  std::vector<double> x(T, 0.0);
  x[t0] = 1.0;
  const auto f = cwt_morlet(x);
  for (std::size_t j = 0; j < f.scales.size(); ++j) {
    const double s = f.scales[j];
    if (s < 4 || s > 100) continue;
    double total = 0, out1 = 0, out2 = 0;
    for (std::size_t t = 0; t < T; ++t) {
      const double m = std::norm(f.coefficients(j, t));
      const double dist = std::abs(double(t) - double(t0));
      total += m;
      if (dist > std::numbers::sqrt2 * s) out1 += m;
      if (dist > 2 * s) out2 += m;
    }
    INFO("scale " << s);
    CHECK(out1 / total < 0.07);
    CHECK(out1 / total > 0.03);
    CHECK(out2 / total < 0.01);
  }
}

TEST_CASE("the transform is linear") {
  const auto x = gaussian(300, 1), y = gaussian(300, 1, 1);
  std::vector<double> z(300);
  for (std::size_t t = 0; t < 300; ++t) z[t] = x[t] + y[t];
  const auto fx = cwt_morlet(x), fy = cwt_morlet(y), fz = cwt_morlet(z);
  double worst = 0, scale = 0;
  for (std::size_t i = 0; i < fz.coefficients.data.size(); ++i) {
    worst = std::max(worst, std::abs(fz.coefficients.data[i] - fx.coefficients.data[i] - fy.coefficients.data[i]));
    scale = std::max(scale, std::abs(fz.coefficients.data[i]));
  }
  CHECK(worst < 1e-10 * scale);
}

TEST_CASE("cone of influence depends only on shape") {
  const auto a = cwt_morlet(gaussian(200, 2));
  const auto b = cwt_morlet(gaussian(200, 3));
  CHECK(a.coi == b.coi);
  CHECK(a.coi[0] == 0.0);
  CHECK_THAT(a.coi[100], WithinAbs(99 / std::numbers::sqrt2, 1e-12));
  CHECK(a.coi[199] == 0.0);
}

TEST_CASE("coherence of a series with itself and its negative") {
  const auto x = gaussian(256, 4);
  std::vector<double> nx(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) nx[t] = -x[t];
  const auto same = wavelet_coherence(x, x);
  for (std::size_t i = 0; i < same.r2.data.size(); ++i) {
    REQUIRE_THAT(same.r2.data[i], WithinAbs(1.0, 1e-10));
    REQUIRE_THAT(same.phase.data[i], WithinAbs(0.0, 1e-10));
  }
  const auto anti = wavelet_coherence(x, nx);
  for (std::size_t i = 0; i < anti.r2.data.size(); ++i) {
    REQUIRE_THAT(anti.r2.data[i], WithinAbs(1.0, 1e-10));
    REQUIRE(std::abs(anti.phase.data[i]) > std::numbers::pi - 1e-10);
  }
  CHECK_THROWS_AS(wavelet_coherence(x, std::vector<double>(100, 1.0)), std::invalid_argument);
}

TEST_CASE("coherence bounds and scale invariance") {
  const auto x = gaussian(256, 5), y = gaussian(256, 5, 1);
  const auto base = wavelet_coherence(x, y);
  for (std::size_t i = 0; i < base.r2.data.size(); ++i) {
    REQUIRE(base.r2.data[i] >= 0.0);
    REQUIRE(base.r2.data[i] <= 1.0 + 1e-12);
    REQUIRE(base.phase.data[i] > -std::numbers::pi);
    REQUIRE(base.phase.data[i] <= std::numbers::pi);
  }
  std::vector<double> ax(256), by(256);
  for (std::size_t t = 0; t < 256; ++t) {
    ax[t] = 4.0 * x[t];
    by[t] = 0.125 * y[t];
  }
  const auto scaled = wavelet_coherence(ax, by);
  for (std::size_t i = 0; i < base.r2.data.size(); ++i) {
    REQUIRE_THAT(scaled.r2.data[i], WithinAbs(base.r2.data[i], 1e-12));
    REQUIRE_THAT(scaled.phase.data[i], WithinAbs(base.phase.data[i], 1e-10));
  }
  for (std::size_t t = 0; t < 256; ++t) ax[t] = 3.7 * x[t];
  const auto odd = wavelet_coherence(ax, y);
  for (std::size_t i = 0; i < base.r2.data.size(); ++i) {
    REQUIRE_THAT(odd.r2.data[i], WithinAbs(base.r2.data[i], 1e-12));
    REQUIRE_THAT(odd.phase.data[i], WithinAbs(base.phase.data[i], 1e-12));
  }
}

TEST_CASE("coherence from precomputed fields matches the direct call") {
  const auto x = gaussian(128, 6), y = gaussian(128, 6, 1);
  const auto a = wavelet_coherence(x, y);
  const auto b = coherence_from_fields(cwt_morlet(x), cwt_morlet(y));
  for (std::size_t i = 0; i < a.r2.data.size(); ++i) REQUIRE_THAT(b.r2.data[i], WithinAbs(a.r2.data[i], 1e-12));
}

TEST_CASE("independent noises rarely exceed the Monte Carlo threshold") {
  const auto x = gaussian(512, 7), y = gaussian(512, 7, 1);
  auto r = wavelet_coherence(x, y);
  r.threshold = mc_significance(x, y, 300, 0.95, 99);
  std::size_t cells = 0, below = 0;
  for (std::size_t j = 0; j < r.scales.size(); ++j)
    for (std::size_t t = 0; t < r.length(); ++t) {
      if (r.in_coi(j, t)) continue;
      ++cells;
      if (r.r2(j, t) < (*r.threshold)(j, t)) ++below;
    }
  REQUIRE(cells > 1000);
  CHECK(double(below) / double(cells) >= 0.9);

  const auto svg = render_coherence_svg(r);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("id=\"coi\"") != std::string::npos);
  CHECK(svg.find("id=\"significance\"") != std::string::npos);
  CHECK(svg == render_coherence_svg(r));
}

TEST_CASE("mc_significance contract") {
  const auto x = gaussian(64, 8), y = gaussian(64, 8, 1);
  CHECK_THROWS_AS(mc_significance(x, y, 99, 0.95, 1), std::invalid_argument);
  CHECK_THROWS_AS(mc_significance(std::vector<double>(64, 1.0), y, 100, 0.95, 1), std::exception);
  setenv("SPECBAND_THREADS", "1", 1);
  const auto a = mc_significance(x, y, 120, 0.95, 5);
  const auto b = mc_significance(x, y, 120, 0.95, 5);
  setenv("SPECBAND_THREADS", "4", 1);
  const auto c = mc_significance(x, y, 120, 0.95, 5);
  unsetenv("SPECBAND_THREADS");
  CHECK(a.data == b.data);
  CHECK(a.data == c.data);
  const auto d = mc_significance(x, y, 120, 0.95, 6);
  CHECK(a.data != d.data);
}

TEST_CASE("AR(1) fit") {
  RandomStream rng(9, 0);
  std::vector<double> x(20000);
  x[0] = rng.normal();
  for (std::size_t t = 1; t < x.size(); ++t) x[t] = 0.6 * x[t - 1] + rng.normal();
  const auto fit = fit_ar1(x);
  CHECK_THAT(fit.phi, WithinAbs(0.6, 0.02));
  CHECK_THAT(fit.variance, WithinAbs(1.0 / (1 - 0.36), 0.08));
  CHECK_THROWS_AS(fit_ar1(std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("r2 of one renders as the top colour everywhere") {
  const auto x = gaussian(128, 10);
  const auto r = wavelet_coherence(x, x);
  const auto svg = render_coherence_svg(r);
  const std::string top = "fill=\"#fde725\"";
  std::size_t rects = 0, top_rects = 0, pos = svg.find("<g id=\"r2\"");
  const auto end = svg.find("</g>", pos);
  while ((pos = svg.find("<rect", pos + 1)) != std::string::npos && pos < end) {
    ++rects;
    const auto close = svg.find("/>", pos);
    if (svg.substr(pos, close - pos).find(top) != std::string::npos) ++top_rects;
  }
  CHECK(rects > 0);
  CHECK(rects == top_rects);
}

TEST_CASE("coherence csv layout") {
  const auto x = gaussian(32, 11), y = gaussian(32, 11, 1);
  const auto csv = coherence_csv(wavelet_coherence(x, y));
  CHECK(csv.rfind("time,scale,r2,phase,significant_flag,in_coi_flag\n0,2,", 0) == 0);
}
