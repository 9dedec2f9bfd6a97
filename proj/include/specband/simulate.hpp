#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "specband/implied.hpp"

namespace specband {

/// ARFIMA(0, d, 0): Gaussian innovations through frac_diff(-d) after a
/// 200-sample burn-in. For 0.5 <= d <= 1 the increments are simulated with
/// d - 1 and cumulated. Stream 0 of the seed.
std::vector<double> sim_arfima(double d, std::size_t length, double innovation_sd, std::uint64_t seed);

/// Same transform applied to given innovations (length + 200 of them).
std::vector<double> arfima_from_innovations(double d, std::vector<double> innovations);

struct FcointTruth {
  double alpha = 0.0;
  double beta = 1.0;
  double d = 0.4;
  double d_u = 0.0;
  double rho = 0.0;
  double u_sd = 1.0;
};

struct FcointSample {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> u;
  FcointTruth truth;
};

/// x ~ I(d) from innovations e; u ~ I(d_u) from rho e + sqrt(1 - rho^2) xi,
/// scaled by u_sd; y = alpha + beta x + u.
FcointSample sim_fcoint(const FcointTruth& truth, std::size_t length, std::uint64_t seed);

struct JumpDiffusionSpec {
  double mu = 0.0;        ///< drift per year
  double sigma = 0.2;     ///< spot vol per sqrt(year)
  std::vector<double> sigma_path;  ///< optional per-step vol, overrides sigma
  double lambda = 0.0;    ///< jumps per day
  double xi_mean = 0.0;
  double xi_sd = 0.0;
  double eta = 0.0;       ///< noise sd
  std::size_t n = 23400;  ///< returns per day
  std::size_t days = 1;
  std::uint64_t seed = 0;
};

struct PathRecord {
  std::vector<double> y;  ///< observed log prices, n * days + 1 of them
  std::vector<double> p;  ///< latent log prices
  std::vector<double> noise;
  std::vector<std::size_t> jump_ticks;  ///< price index at which each jump has arrived
  std::vector<double> jump_sizes;
  double iv = 0.0;
  double jv = 0.0;
  double qv = 0.0;
};

/// Euler scheme with dt = 1 / (252 n); Poisson(lambda) jumps per day at
/// uniform times; i.i.d. N(0, eta^2) noise. Streams 0, 1, 2 of the seed
/// drive diffusion, jumps and noise.
PathRecord sim_jump_diffusion(const JumpDiffusionSpec& spec);

/// Black chain on strikes lo, lo + step, ... <= hi: puts below F, calls
/// above, none at F. Spot is F e^{-r tau}; mids are discounted prices.
OptionChain sim_bs_chain(double F, double sigma, double tau, double strike_lo, double strike_hi, double step,
                         double rate = 0.0);

}  // namespace specband
