#pragma once

#include <stdexcept>
#include <string>

namespace lehn {

// Base class for every error raised by the library: violated preconditions,
// arithmetic on incompatible operands, parse failures, evaluation failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lehn
