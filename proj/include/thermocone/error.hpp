#pragma once

#include <stdexcept>
#include <string>

namespace thermocone {

/// Base class of every error raised by the library. `code()` is a stable,
/// machine-readable identifier (used by the CLI in its error records).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Malformed or inconsistent input: non-Hermitian matrices, bad traces,
/// dimension mismatches, empty grids, unparsable configuration.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input for which the requested quantity does not exist:
/// out-of-range energies, infeasible decompositions, wrong reservoir
/// ordering, exceeded enumeration caps.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace thermocone
