#include <cmath>
#include <cstdlib>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "specband/implied.hpp"
#include "specband/longmemory.hpp"
#include "specband/parallel.hpp"
#include "specband/random.hpp"
#include "specband/realized.hpp"
#include "specband/regression.hpp"
#include "specband/simulate.hpp"

using namespace specband;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double autocorrelation(const std::vector<double>& x, std::size_t lag) {
  const double m = oracle::mean(x);
  double num = 0, den = 0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    den += (x[t] - m) * (x[t] - m);
    if (t + lag < x.size()) num += (x[t] - m) * (x[t + lag] - m);
  }
  return num / den;
}

}  // namespace

TEST_CASE("ARFIMA with d = 0 is white noise") {
  const auto x = sim_arfima(0.0, 20000, 2.5, 1);
  CHECK_THAT(oracle::sd(x), WithinRel(2.5, 0.02));
  CHECK(std::abs(autocorrelation(x, 1)) < 0.03);
  RandomStream rng(1, 0);
  std::vector<double> raw(20200);
  for (double& v : raw) v = 2.5 * rng.normal();
  for (std::size_t t = 0; t < x.size(); ++t) REQUIRE(x[t] == raw[t + 200]);
}

TEST_CASE("ARFIMA follows the direct fractional filter") {
  RandomStream rng(2, 0);
  std::vector<double> e(700);
  for (double& v : e) v = rng.normal();
  const auto x = arfima_from_innovations(0.3, e);
  const auto ref = oracle::frac_diff_direct(e, -0.3);
  REQUIRE(x.size() == 500);
  for (std::size_t t = 0; t < x.size(); ++t) REQUIRE_THAT(x[t], WithinAbs(ref[t + 200], 1e-10));
  const auto walk = arfima_from_innovations(1.0, e);
  for (std::size_t t = 1; t < walk.size(); ++t) REQUIRE_THAT(walk[t] - walk[t - 1], WithinAbs(e[t + 200], 1e-12));
}

TEST_CASE("ARFIMA is deterministic and seed-sensitive") {
  CHECK(sim_arfima(0.4, 1000, 1, 7) == sim_arfima(0.4, 1000, 1, 7));
  CHECK(sim_arfima(0.4, 1000, 1, 7) != sim_arfima(0.4, 1000, 1, 8));
  CHECK_THROWS_AS(sim_arfima(0.4, 1, 1, 7), std::invalid_argument);
}

TEST_CASE("ARFIMA long-memory signature") {
  std::size_t positive = 0;
  for (std::uint64_t s = 0; s < 200; ++s) positive += autocorrelation(sim_arfima(0.4, 4096, 1, 100 + s), 50) > 0;
  CHECK(positive >= 190);
}

TEST_CASE("fcoint construction") {
  FcointTruth t;
  t.alpha = 0.5;
  t.beta = 2;
  t.u_sd = 0.3;
  const auto s = sim_fcoint(t, 800, 3);
  for (std::size_t i = 0; i < 800; ++i) REQUIRE(s.y[i] == t.alpha + t.beta * s.x[i] + s.u[i]);
  CHECK(s.x == sim_arfima(t.d, 800, 1, 3));
  FcointTruth bad;
  bad.d_u = 0.5;
  CHECK_THROWS_AS(sim_fcoint(bad, 100, 1), std::invalid_argument);
  bad = {};
  bad.rho = 1.5;
  CHECK_THROWS_AS(sim_fcoint(bad, 100, 1), std::invalid_argument);
}

TEST_CASE("fcoint without noise is fitted exactly") {
  FcointTruth t;
  t.alpha = 1;
  t.beta = 0.7;
  t.u_sd = 0;
  const auto s = sim_fcoint(t, 1024, 4);
  CHECK_THAT(ols(s.y, s.x).beta, WithinAbs(0.7, 1e-12));
  CHECK_THAT(wbls(s.y, s.x, {5, 6, 6}).beta, WithinAbs(0.7, 1e-12));
  CHECK_THAT(nbls(s.y, s.x, BandSpec::exponents(0.4, 0.6)).beta, WithinAbs(0.7, 1e-12));
  CHECK_THAT(fmnbls(s.y, s.x, BandSpec::exponents(0.4, 0.6)).beta, WithinAbs(0.7, 1e-12));
}

TEST_CASE("fcoint regression nulls") {
  std::vector<double> o;
  for (std::uint64_t r = 0; r < 200; ++r) {
    const auto s = sim_fcoint({}, 1024, 500 + r);
    o.push_back(ols(s.y, s.x).beta);
  }
  CHECK(std::abs(oracle::mean(o) - 1) < 3 * oracle::sd(o) / std::sqrt(200.0));

  FcointTruth t;
  t.rho = 0.5;
  t.d_u = 0.2;
  double ob = 0, nb = 0, du = 0;
  for (std::uint64_t r = 0; r < 200; ++r) {
    const auto s = sim_fcoint(t, 2048, 800 + r);
    ob += ols(s.y, s.x).beta;
    nb += nbls(s.y, s.x, BandSpec::exponents(0.1, 0.4)).beta;
    du += gph(s.u, 0.7).d_hat;
  }
  INFO("ols " << ob / 200 << " nbls " << nb / 200);
  CHECK(std::abs(nb / 200 - 1) < std::abs(ob / 200 - 1));
  const double se = std::numbers::pi / std::sqrt(24.0 * std::floor(std::pow(2048.0, 0.7)));
  CHECK(std::abs(du / 200 - 0.2) < 2 * se);
}

TEST_CASE("jump diffusion bookkeeping") {
  JumpDiffusionSpec plain;
  plain.n = 1000;
  plain.seed = 9;
  const auto a = sim_jump_diffusion(plain);
  CHECK(a.y == a.p);
  CHECK(a.jv == 0.0);
  CHECK(a.y.size() == 1001);
  CHECK(a.iv == 0.2 * 0.2 / 252);

  JumpDiffusionSpec full = plain;
  full.days = 3;
  full.lambda = 4;
  full.xi_sd = 0.01;
  full.eta = 1e-4;
  const auto b = sim_jump_diffusion(full);
  for (std::size_t i = 0; i < b.y.size(); ++i) REQUIRE(b.y[i] == b.p[i] + b.noise[i]);
  CHECK(b.qv == b.iv + b.jv);
  double jv = 0;
  for (double s : b.jump_sizes) jv += s * s;
  CHECK(b.jv == jv);
  REQUIRE(!b.jump_ticks.empty());
  for (std::size_t k = 0; k < b.jump_ticks.size(); ++k) {
    CHECK(b.jump_ticks[k] >= 1);
    CHECK(b.jump_ticks[k] <= 3000);
  }
  const auto c = sim_jump_diffusion(full);
  CHECK(c.y == b.y);
  CHECK(c.jump_ticks == b.jump_ticks);

  JumpDiffusionSpec path = plain;
  path.sigma_path.assign(1000, 0.1);
  for (std::size_t i = 500; i < 1000; ++i) path.sigma_path[i] = 0.3;
  CHECK_THAT(sim_jump_diffusion(path).iv, WithinRel((0.01 + 0.09) / 2 / 252, 1e-12));
  path.sigma_path.pop_back();
  CHECK_THROWS_AS(sim_jump_diffusion(path), std::invalid_argument);
}

TEST_CASE("noise inflates realized variance by 2 n eta^2") {
  const double eta = 5e-4;
  std::vector<double> bias(500);
  parallel_for(500, [&](std::size_t s) {
    JumpDiffusionSpec spec;
    spec.eta = eta;
    spec.seed = 10000 + s;
    const auto path = sim_jump_diffusion(spec);
    std::vector<double> r(path.y.size() - 1);
    for (std::size_t t = 0; t < r.size(); ++t) r[t] = path.y[t + 1] - path.y[t];
    bias[s] = realized_variance(r) - path.iv;
  });
  CHECK_THAT(oracle::mean(bias), WithinRel(2 * 23400 * eta * eta, 0.2));
}

TEST_CASE("synthetic option chains") {
  const double tau = 30.0 / 365.0;
  const auto chain = sim_bs_chain(100, 0.2, tau, 80, 120, 1);
  CHECK(chain.records.size() == 40);
  const auto kept = filter_chain(chain, {7, 0.0, 6});
  CHECK(kept.records.size() == chain.records.size());
  for (const auto& r : chain.records) {
    CHECK((r.type == OptionType::Call) == (r.strike > 100));
    CHECK_THAT(bs_implied_vol(r.mid, 100, r.strike, tau, r.type), WithinAbs(0.2, 1e-8));
  }
  CHECK_THROWS_AS(sim_bs_chain(100, 0.2, tau, 110, 120, 1), std::invalid_argument);
  const auto disc = sim_bs_chain(100, 0.2, tau, 80, 120, 1, 0.05);
  CHECK_THAT(disc.forward(), WithinRel(100.0, 1e-14));
}

TEST_CASE("MFIV on a wide chain recovers sigma^2 tau") {
  // At an index level of 1000 the unit strike grid is fine relative to one
  // standard deviation (57 points).
  const double tau = 30.0 / 365.0, sigma = 0.2, F = 1000;
  const double sd = F * sigma * std::sqrt(tau);
  const auto curve = fit_vol_curve(sim_bs_chain(F, sigma, tau, F - 9 * sd, F + 9 * sd, 5));
  CHECK_THAT(mfiv(curve, 8), WithinRel(sigma * sigma * tau, 0.005));
}

TEST_CASE("simulation is independent of thread count") {
  auto run = [] {
    std::vector<double> out(16);
    parallel_for(16, [&](std::size_t k) {
      JumpDiffusionSpec spec;
      spec.n = 2000;
      spec.lambda = 3;
      spec.xi_sd = 0.01;
      spec.eta = 1e-4;
      spec.seed = derive_seed(77, k);
      out[k] = jwtsrv(sim_jump_diffusion(spec).y).total + sim_arfima(0.3, 500, 1, derive_seed(78, k))[499];
    });
    return out;
  };
  setenv("SPECBAND_THREADS", "1", 1);
  const auto a = run();
  setenv("SPECBAND_THREADS", "3", 1);
  const auto b = run();
  unsetenv("SPECBAND_THREADS");
  CHECK(a == b);
}
