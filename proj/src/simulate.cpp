#include "specband/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specband/random.hpp"
#include "specband/series.hpp"

namespace specband {

namespace {

constexpr std::size_t kBurnIn = 200;

std::vector<double> draw_normals(RandomStream& rng, std::size_t n, double sd) {
  std::vector<double> e(n);
  for (double& v : e) v = sd * rng.normal();
  return e;
}

}  // namespace

std::vector<double> arfima_from_innovations(double d, std::vector<double> e) {
  if (!(d > -0.5 && d <= 1.0)) throw std::invalid_argument("sim_arfima: d must lie in (-0.5, 1]");
  if (e.size() <= kBurnIn + 1) throw std::invalid_argument("sim_arfima: too few innovations");
  const bool integrate = d >= 0.5;
  const double order = integrate ? d - 1.0 : d;
  auto full = order == 0.0 ? std::move(e) : frac_diff(e, -order);
  std::vector<double> out(full.begin() + static_cast<std::ptrdiff_t>(kBurnIn), full.end());
  if (integrate)
    for (std::size_t t = 1; t < out.size(); ++t) out[t] += out[t - 1];
  return out;
}

std::vector<double> sim_arfima(double d, std::size_t length, double innovation_sd, std::uint64_t seed) {
  if (length < 2) throw std::invalid_argument("sim_arfima: length must be at least 2");
  if (!(innovation_sd >= 0.0)) throw std::invalid_argument("sim_arfima: innovation sd must be non-negative");
  RandomStream rng(seed, 0);
  return arfima_from_innovations(d, draw_normals(rng, length + kBurnIn, innovation_sd));
}

FcointSample sim_fcoint(const FcointTruth& truth, std::size_t length, std::uint64_t seed) {
  if (!(truth.d_u >= 0.0 && truth.d_u < truth.d && truth.d < 1.0))
    throw std::invalid_argument("sim_fcoint: need 0 <= d_u < d < 1");
  if (!(std::abs(truth.rho) <= 1.0)) throw std::invalid_argument("sim_fcoint: |rho| must not exceed 1");
  if (length < 2) throw std::invalid_argument("sim_fcoint: length must be at least 2");
  RandomStream re(seed, 0), rxi(seed, 1);
  const std::size_t n = length + kBurnIn;
  const auto e = draw_normals(re, n, 1.0);
  const auto xi = draw_normals(rxi, n, 1.0);
  std::vector<double> eta(n);
  const double c = std::sqrt(1.0 - truth.rho * truth.rho);
  for (std::size_t t = 0; t < n; ++t) eta[t] = truth.rho * e[t] + c * xi[t];

  FcointSample s;
  s.truth = truth;
  s.x = arfima_from_innovations(truth.d, e);
  s.u = arfima_from_innovations(truth.d_u, std::move(eta));
  for (double& v : s.u) v *= truth.u_sd;
  s.y.resize(length);
  for (std::size_t t = 0; t < length; ++t) s.y[t] = truth.alpha + truth.beta * s.x[t] + s.u[t];
  return s;
}

PathRecord sim_jump_diffusion(const JumpDiffusionSpec& spec) {
  if (spec.n < 1 || spec.days < 1) throw std::invalid_argument("sim_jump_diffusion: n and days must be positive");
  if (spec.sigma < 0.0 || spec.eta < 0.0 || spec.lambda < 0.0 || spec.xi_sd < 0.0)
    throw std::invalid_argument("sim_jump_diffusion: sigma, eta, lambda and xi_sd must be non-negative");
  const std::size_t steps = spec.n * spec.days;
  if (!spec.sigma_path.empty() && spec.sigma_path.size() != steps)
    throw std::invalid_argument("sim_jump_diffusion: sigma path must have n * days entries");
  const double dt = 1.0 / (252.0 * static_cast<double>(spec.n));
  RandomStream diffusion(spec.seed, 0), jumps(spec.seed, 1), noise(spec.seed, 2);

  PathRecord rec;
  rec.p.assign(steps + 1, 0.0);
  std::vector<double> jump_at(steps + 1, 0.0);
  for (std::size_t day = 0; day < spec.days; ++day) {
    const auto count = jumps.poisson(spec.lambda);
    std::vector<std::pair<std::size_t, double>> today;
    for (std::uint64_t k = 0; k < count; ++k) {
      const double u = jumps.uniform();
      const auto within = std::min<std::size_t>(spec.n, static_cast<std::size_t>(u * static_cast<double>(spec.n)) + 1);
      const double size = spec.xi_mean + spec.xi_sd * jumps.normal();
      today.emplace_back(day * spec.n + within, size);
    }
    std::stable_sort(today.begin(), today.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [tick, size] : today) {
      rec.jump_ticks.push_back(tick);
      rec.jump_sizes.push_back(size);
      jump_at[tick] += size;
      rec.jv += size * size;
    }
  }
  const double sqdt = std::sqrt(dt);
  double iv = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double s = spec.sigma_path.empty() ? spec.sigma : spec.sigma_path[i - 1];
    rec.p[i] = rec.p[i - 1] + spec.mu * dt + s * sqdt * diffusion.normal() + jump_at[i];
    iv += s * s;
  }
  rec.iv = spec.sigma_path.empty() ? spec.sigma * spec.sigma * static_cast<double>(spec.days) / 252.0 : iv * dt;
  rec.qv = rec.iv + rec.jv;
  rec.noise.resize(steps + 1);
  rec.y.resize(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    rec.noise[i] = spec.eta > 0.0 ? spec.eta * noise.normal() : 0.0;
    rec.y[i] = rec.p[i] + rec.noise[i];
  }
  return rec;
}

OptionChain sim_bs_chain(double F, double sigma, double tau, double strike_lo, double strike_hi, double step,
                         double rate) {
  if (!(F > 0.0 && sigma > 0.0 && tau > 0.0 && step > 0.0 && strike_lo > 0.0))
    throw std::invalid_argument("sim_bs_chain: inputs must be positive");
  if (!(strike_lo < F && F < strike_hi)) throw std::invalid_argument("sim_bs_chain: need strike_lo < F < strike_hi");
  OptionChain chain;
  chain.tau = tau;
  chain.rate = rate;
  chain.spot = F * std::exp(-rate * tau);
  chain.expiry = static_cast<std::int64_t>(std::llround(tau * 365.0));
  const double discount = std::exp(-rate * tau);
  for (std::size_t i = 0;; ++i) {
    const double K = strike_lo + static_cast<double>(i) * step;
    if (K > strike_hi + 1e-9 * step) break;
    if (K == F) continue;
    const OptionType type = K > F ? OptionType::Call : OptionType::Put;
    chain.records.push_back({K, type, discount * bs_price(F, K, sigma, tau, type)});
  }
  return chain;
}

}  // namespace specband
