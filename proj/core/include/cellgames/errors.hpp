#pragma once

#include <stdexcept>
#include <string>

namespace cellgames {

/// A configurable guard (strategy cap, atom-count cap, propagation budget)
/// was exceeded.
struct ResourceLimitError : std::runtime_error {
  explicit ResourceLimitError(const std::string& msg)
      : std::runtime_error(msg) {}
};

/// Malformed input data: game spec strings, table files, proof files,
/// unknown strategy labels.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A construction produced output that failed its own verification.
struct InternalCheckError : std::logic_error {
  explicit InternalCheckError(const std::string& msg)
      : std::logic_error(msg) {}
};

}  // namespace cellgames
