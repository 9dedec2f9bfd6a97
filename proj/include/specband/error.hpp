#pragma once

#include <stdexcept>

namespace specband {

// Precondition and input-validation failures are reported as
// std::invalid_argument. The two types below cover the remaining cases.

/// A computation could not produce a finite, meaningful result
/// (degenerate input, failed inversion, empty density).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace specband
