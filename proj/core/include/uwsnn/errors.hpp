#pragma once

#include <stdexcept>

namespace uwsnn {

/// Thrown when a requested computation would exceed a configured budget
/// (keystream bit budget, brute-force length guard).
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by text-format readers: polynomial expressions, CSV files, model files.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by train() when the loss becomes non-finite.
struct TrainingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace uwsnn
