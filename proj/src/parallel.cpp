#include "specband/parallel.hpp"

#include <cstdlib>
#include <string>

namespace specband {

std::size_t max_threads() {
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("SPECBAND_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      // ignored: fall back to hardware concurrency
    }
  }
  return hw;
}

}  // namespace specband
