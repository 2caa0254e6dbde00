#pragma once

#include <stdexcept>
#include <string>

namespace commnet {

// Input or configuration that cannot be used as given.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Remote API unreachable or throttling past the retry budget.
class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A domain precondition or invariant was violated by the data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace commnet
