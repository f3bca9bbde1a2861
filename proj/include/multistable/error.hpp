#pragma once

#include <stdexcept>
#include <string>

namespace multistable {

/// Base of every error the library raises. The CLI maps each subclass to an
/// exit code (argument/domain 2, resource 3, numeric 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition or model hypothesis was violated by the caller.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A value left the admissible domain (index out of [a,b], non-integrable
/// singularity, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (cell count, window width) would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical method failed to reach its tolerance.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double previous, double last)
      : Error(what + " (last estimates " + std::to_string(previous) + ", " +
              std::to_string(last) + ")"),
        previous_(previous),
        last_(last) {}

  double previous_estimate() const noexcept { return previous_; }
  double last_estimate() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

}  // namespace multistable
