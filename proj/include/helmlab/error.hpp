#pragma once

#include <stdexcept>
#include <string>

namespace helmlab {

enum class ErrorKind {
  invalid_argument,
  domain,
  invariant,
  unsupported,
  singular,
  not_converged,
  io,
  parse,
};

/// Base class for every error raised by the library. The kind maps onto the
/// status codes of the C API.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what) : Error(ErrorKind::invariant, what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorKind::invalid_argument, what) {}
};

class UnsupportedProblem : public Error {
 public:
  explicit UnsupportedProblem(const std::string& what) : Error(ErrorKind::unsupported, what) {}
};

class SingularSystem : public Error {
 public:
  explicit SingularSystem(const std::string& what) : Error(ErrorKind::singular, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::parse, what) {}
};

}  // namespace helmlab
