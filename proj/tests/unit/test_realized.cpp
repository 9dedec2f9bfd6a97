#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "specband/error.hpp"
#include "specband/random.hpp"
#include "specband/realized.hpp"
#include "specband/simulate.hpp"

using namespace specband;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Ramp plus white noise, with an optional step of `jump` after tick k.
std::vector<double> noisy_ramp(std::size_t n, double sd, std::uint64_t seed, std::size_t k = 0, double jump = 0) {
  RandomStream rng(seed, 0);
  std::vector<double> p(n);
  for (std::size_t t = 0; t < n; ++t) p[t] = 1e-4 * t + sd * rng.normal() + (k && t > k ? jump : 0.0);
  return p;
}

std::vector<double> random_walk(std::size_t n, double sd, std::uint64_t seed, std::size_t k = 0, double jump = 0) {
  RandomStream rng(seed, 0);
  std::vector<double> p(n, 0.0);
  for (std::size_t t = 1; t < n; ++t) p[t] = p[t - 1] + sd * rng.normal() + (t == k + 1 && k ? jump : 0.0);
  return p;
}

}  // namespace

TEST_CASE("realized variance") {
  CHECK_THAT(realized_variance(std::vector<double>{0.01, -0.01}), WithinAbs(0.0002, 1e-18));
  const auto r = log_returns(TimeSeries::from_values(std::vector<double>(50, 7.0)));
  CHECK(realized_variance(r) == 0.0);
}

TEST_CASE("realized variance of a pure diffusion day") {
  double acc = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    JumpDiffusionSpec spec;
    spec.seed = 300 + s;
    const auto path = sim_jump_diffusion(spec);
    std::vector<double> r(path.y.size() - 1);
    for (std::size_t t = 0; t < r.size(); ++t) r[t] = path.y[t + 1] - path.y[t];
    acc += realized_variance(r);
  }
  CHECK_THAT(acc / 200, WithinRel(0.04 / 252, 0.02));
}

TEST_CASE("jump variation") {
  CHECK(jump_variation(JumpSet{}) == 0.0);
  JumpSet s;
  s.sizes = {0.01, -0.02};
  CHECK_THAT(jump_variation(s), WithinAbs(0.0005, 1e-18));
}

TEST_CASE("jump detector contract") {
  CHECK_THROWS_AS(detect_jumps(std::vector<double>(15, 0.0)), std::invalid_argument);
  try {
    detect_jumps(std::vector<double>(100, 4.0));
    FAIL("no exception");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()) == "degenerate scale");
  }
}

TEST_CASE("white-noise ramp stays jump-free") {
  std::size_t clean = 0;
  for (std::uint64_t s = 0; s < 500; ++s) clean += detect_jumps(noisy_ramp(4096, 1e-3, 10 + s)).locations.empty();
  CHECK(clean >= 495);
}

TEST_CASE("a 10-sigma jump in a random walk is found and located") {
  std::size_t hits = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto p = random_walk(4096, 1e-3, 20 + s, 2000, 1e-2);
    const auto set = detect_jumps(p);
    if (set.locations.size() == 1 && std::abs(double(set.locations[0]) - 2000.0) <= 10.0) ++hits;
  }
  CHECK(hits >= 495);
}

TEST_CASE("recall on a white-noise ramp matches the Gaussian prediction") {
  // Haar level-1 coefficient at the step is jump/2 plus N(0, sd^2/2); the
  // threshold is close to sd sqrt(2 log n).
  const double sd = 1e-3, jump = 10 * sd;
  const double thr = sd * std::sqrt(2 * std::log(4096.0));
  const double predicted = 1 - static_cast<double>(oracle::norm_cdf((thr - jump / 2) / (sd / std::numbers::sqrt2)));
  std::size_t hits = 0, sized = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto set = detect_jumps(noisy_ramp(4096, sd, 40 + s, 2000, jump));
    for (std::size_t i = 0; i < set.locations.size(); ++i)
      if (std::abs(double(set.locations[i]) - 2000.0) <= 10.0) {
        ++hits;
        sized += std::abs(set.sizes[i] - jump - 1e-3) < 0.2 * jump;
      }
  }
  const double recall = hits / 500.0;
  INFO("recall " << recall << " predicted " << predicted);
  CHECK(std::abs(recall - predicted) < 3 * std::sqrt(predicted * (1 - predicted) / 500) + 0.01);
  CHECK(sized == hits);
}

TEST_CASE("removing detected jumps leaves nothing to detect") {
  std::size_t clean = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto p = random_walk(4096, 1e-3, 60 + s, 1000 + 5 * s, 1.5e-2);
    const auto set = detect_jumps(p);
    clean += detect_jumps(remove_jumps(p, set)).locations.empty();
  }
  CHECK(clean >= 190);
}

TEST_CASE("jump detection is scale-equivariant") {
  auto p = random_walk(2048, 1e-3, 70, 700, 1e-2);
  const auto a = detect_jumps(p);
  for (double& v : p) v *= 8.0;
  const auto b = detect_jumps(p);
  CHECK(a.locations == b.locations);
  REQUIRE(a.sizes.size() == b.sizes.size());
  for (std::size_t i = 0; i < a.sizes.size(); ++i) CHECK_THAT(b.sizes[i], WithinRel(8 * a.sizes[i], 1e-12));
  CHECK_THAT(b.threshold, WithinRel(8 * a.threshold, 1e-12));
}

TEST_CASE("adjacent flags merge into one event") {
  auto p = random_walk(2048, 1e-3, 80);
  for (std::size_t t = 1001; t < p.size(); ++t) p[t] += 0.02;
  for (std::size_t t = 1004; t < p.size(); ++t) p[t] += 0.02;
  const auto set = detect_jumps(p, 10);
  CHECK(set.locations.size() == 1);
  const auto wide = detect_jumps(p, 2);
  CHECK(wide.locations.size() == 2);
}

TEST_CASE("jump variation tracks the simulated jumps") {
  double jv = 0, truth = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    JumpDiffusionSpec spec;
    spec.lambda = 2;
    spec.xi_sd = 0.005;
    spec.seed = 2000 + s;
    const auto path = sim_jump_diffusion(spec);
    jv += jump_variation(detect_jumps(path.y));
    truth += path.jv;
  }
  CHECK_THAT(jv, WithinRel(truth, 0.15));
}

TEST_CASE("JWTSRV structure") {
  JumpDiffusionSpec spec;
  spec.n = 4096;
  spec.seed = 5;
  const auto path = sim_jump_diffusion(spec);
  const auto d = jwtsrv(path.y);
  double sum = 0;
  for (double v : d.per_scale) sum += v;
  CHECK(sum == d.total);
  CHECK(d.per_scale.size() == static_cast<std::size_t>(d.levels) + 1);
  CHECK(d.grids == 255);
  CHECK_THAT(d.n_bar, WithinAbs((4096.0 - 255 + 1) / 255, 1e-12));

  JwtsrvConfig one;
  one.grids = 1;
  one.levels = 6;
  const auto g1 = jwtsrv(path.y, one);
  for (double v : g1.per_scale) CHECK(v == 0.0);

  JwtsrvConfig bad;
  bad.grids = 2000;
  CHECK_THROWS_AS(jwtsrv(path.y, bad), std::invalid_argument);
  bad.grids = std::nullopt;
  bad.levels = 9;
  CHECK_THROWS_AS(jwtsrv(path.y, bad), std::invalid_argument);
  CHECK_THROWS_AS(jwtsrv(std::vector<double>(63, 0.0)), std::invalid_argument);
}

TEST_CASE("JWTSRV agrees with RV on clean diffusions") {
  double tsrv = 0, rv = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    JumpDiffusionSpec spec;
    spec.seed = 4000 + s;
    const auto d = jwtsrv(sim_jump_diffusion(spec).y);
    tsrv += d.total;
    rv += d.rv_naive;
  }
  CHECK_THAT(tsrv, WithinRel(rv, 0.05));
}

TEST_CASE("JWTSRV beats RV under noise and jumps") {
  double e_ts = 0, e_rv = 0, bias = 0;
  const std::size_t reps = 100;
  for (std::uint64_t s = 0; s < reps; ++s) {
    JumpDiffusionSpec spec;
    spec.eta = 5e-4;
    spec.lambda = 1;
    spec.xi_sd = 0.005;
    spec.seed = 6000 + s;
    const auto path = sim_jump_diffusion(spec);
    const auto d = jwtsrv(path.y);
    e_ts += std::pow(d.total - path.iv, 2);
    e_rv += std::pow(d.rv_naive - path.iv, 2);
    bias += d.rv_naive - path.qv;
  }
  CHECK(e_ts < e_rv);
  CHECK_THAT(bias / reps, WithinRel(2 * 23400 * 25e-8, 0.2));
}

TEST_CASE("last-tick resampling") {
  const std::vector<std::int64_t> stamps{0, 3, 4, 9, 12};
  const std::vector<double> prices{1, 2, 3, 4, 5};
  CHECK(resample_last_tick(stamps, prices, 5) == std::vector<double>{1, 3, 4});
  CHECK(resample_last_tick(stamps, prices, 1).size() == 13);
  CHECK_THROWS_AS(resample_last_tick(stamps, prices, 0), std::invalid_argument);
}
