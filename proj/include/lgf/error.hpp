#pragma once

#include <stdexcept>
#include <string>

namespace lgf {

// Failure categories. The numeric values are the CLI exit codes.
enum class ErrorKind {
  validation = 2,
  resource = 3,
  insufficient_data = 4,
  verification = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what)
      : Error(ErrorKind::validation, what) {}
};

struct ResourceError : Error {
  explicit ResourceError(const std::string& what)
      : Error(ErrorKind::resource, what) {}
};

struct InsufficientDataError : Error {
  explicit InsufficientDataError(const std::string& what)
      : Error(ErrorKind::insufficient_data, what) {}
};

struct VerificationError : Error {
  explicit VerificationError(const std::string& what)
      : Error(ErrorKind::verification, what) {}
};

// A recurrence's leading coefficient vanishes where a value must be solved for.
struct SingularPointError : ValidationError {
  SingularPointError(const std::string& what, long n)
      : ValidationError(what), n(n) {}
  long n;
};

// Extrapolation cannot reach the requested accuracy at the given precision.
struct PrecisionLossError : ResourceError {
  using ResourceError::ResourceError;
};

}  // namespace lgf
