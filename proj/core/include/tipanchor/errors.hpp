#pragma once

#include <stdexcept>
#include <string>

namespace tipanchor {

// Base class for every error raised by the model layers. The CLI maps these
// to exit status 1; input-format problems use a separate type in the tools.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An angle or parameter outside the range the model covers.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A violated precondition: wrong mode, negative depth, malformed input list.
class ContractError : public Error {
 public:
  using Error::Error;
};

// The media or configuration is not usable yet (e.g. uncalibrated media).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// A least-squares problem without a unique solution.
class DegenerateFitError : public Error {
 public:
  using Error::Error;
};

}  // namespace tipanchor
