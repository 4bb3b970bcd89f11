#pragma once

#include <stdexcept>
#include <string>

namespace isingbath {

/// Invalid parameters or a malformed configuration document.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A kernel produced a non-finite value. Carries the time sample at fault.
class ComputationError : public std::runtime_error {
 public:
  ComputationError(const std::string& what, double time)
      : std::runtime_error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// A density matrix does not have the expected X-form structure.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An output destination could not be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace isingbath
