#include "specband/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace specband::fft {

namespace {

enum class Kind { RealForward, Forward, Backward };

struct Buffer {
  explicit Buffer(std::size_t bytes) : ptr(fftw_malloc(bytes == 0 ? 1 : bytes)) {}
  ~Buffer() { fftw_free(ptr); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  void* ptr;
};

// FFTW's planner is not reentrant; execution of an existing plan on new
// arrays is. Plans are created once under the lock with FFTW_ESTIMATE, which
// keeps them deterministic.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan get_plan(Kind kind, std::size_t n) {
  static std::map<std::pair<Kind, std::size_t>, fftw_plan> cache;
  std::lock_guard lock(planner_mutex());
  auto key = std::make_pair(kind, n);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const int len = static_cast<int>(n);
  Buffer in(sizeof(fftw_complex) * n);
  Buffer out(sizeof(fftw_complex) * n);
  fftw_plan plan = nullptr;
  switch (kind) {
    case Kind::RealForward:
      plan = fftw_plan_dft_r2c_1d(len, static_cast<double*>(in.ptr),
                                  static_cast<fftw_complex*>(out.ptr), FFTW_ESTIMATE);
      break;
    case Kind::Forward:
      plan = fftw_plan_dft_1d(len, static_cast<fftw_complex*>(in.ptr),
                              static_cast<fftw_complex*>(out.ptr), FFTW_FORWARD, FFTW_ESTIMATE);
      break;
    case Kind::Backward:
      plan = fftw_plan_dft_1d(len, static_cast<fftw_complex*>(in.ptr),
                              static_cast<fftw_complex*>(out.ptr), FFTW_BACKWARD, FFTW_ESTIMATE);
      break;
  }
  cache.emplace(key, plan);
  return plan;
}

std::vector<cplx> complex_transform(std::span<const cplx> x, Kind kind) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  fftw_plan plan = get_plan(kind, n);
  Buffer in(sizeof(fftw_complex) * n);
  Buffer out(sizeof(fftw_complex) * n);
  std::memcpy(in.ptr, x.data(), sizeof(fftw_complex) * n);
  fftw_execute_dft(plan, static_cast<fftw_complex*>(in.ptr), static_cast<fftw_complex*>(out.ptr));
  std::vector<cplx> result(n);
  std::memcpy(result.data(), out.ptr, sizeof(fftw_complex) * n);
  return result;
}

}  // namespace

std::vector<cplx> forward_real(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  fftw_plan plan = get_plan(Kind::RealForward, n);
  Buffer in(sizeof(double) * n);
  Buffer out(sizeof(fftw_complex) * (n / 2 + 1));
  std::memcpy(in.ptr, x.data(), sizeof(double) * n);
  fftw_execute_dft_r2c(plan, static_cast<double*>(in.ptr), static_cast<fftw_complex*>(out.ptr));
  std::vector<cplx> result(n / 2 + 1);
  std::memcpy(result.data(), out.ptr, sizeof(fftw_complex) * result.size());
  return result;
}

std::vector<cplx> forward(std::span<const cplx> x) { return complex_transform(x, Kind::Forward); }

std::vector<cplx> backward(std::span<const cplx> x) { return complex_transform(x, Kind::Backward); }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace specband::fft
