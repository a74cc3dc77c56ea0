#pragma once

#include <stdexcept>
#include <string>

namespace bousslab {

/// Field whose coefficients are not the transform of a real field.
class MalformedFieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite values appeared in a tendency; carries the time of failure.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double t)
      : std::runtime_error(what), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Config parse or validation failure. `line()` is 0 for validation errors.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace bousslab
