#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>

namespace specband {

/// Philox4x32-10 counter-based generator. The output sequence is a pure
/// function of (seed, stream): two engines with the same pair produce the
/// same numbers regardless of where or when they run.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;

  Philox4x32(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  unsigned index_ = 4;
};

/// Mixes a base seed with a replication index (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k);

/// Convenience wrapper bundling an engine with the distributions the
/// simulators need.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream) : engine_(seed, stream) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t poisson(double mean);

 private:
  Philox4x32 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace specband
