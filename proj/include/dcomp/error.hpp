#pragma once

#include <stdexcept>
#include <string>

namespace dcomp {

/// Invalid user input: bad config keys, malformed files, out-of-range parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical stage could not produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dcomp
