#pragma once

#include <stdexcept>
#include <string>

namespace weylglue {

// Values double as CLI exit codes.
enum class ErrorKind : int {
  kInvalidArgument = 2,
  kUnknownType = 3,
  kMalformedInput = 4,
  kResourceCap = 5,
  kNotFiniteType = 6,
  kInvariantViolation = 7,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
  ErrorKind kind_;
};

} // namespace weylglue
