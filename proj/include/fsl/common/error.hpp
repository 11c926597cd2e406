#pragma once

#include <stdexcept>
#include <string>

namespace fsl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// D^beta with beta < 0 hit a nonzero zero-mode and no policy allows dropping it.
class ZeroModeError : public Error {
 public:
  using Error::Error;
};

// A symbol (N_e, K) was evaluated outside the set where it is defined.
class OutsideDomainError : public Error {
 public:
  using Error::Error;
};

// Sampling parameters describe an empty (or numerically unresolvable) set.
class EmptyDomainError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::string diagnostics)
      : Error(what), diagnostics_(std::move(diagnostics)) {}
  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

}  // namespace fsl
