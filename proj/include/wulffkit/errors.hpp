#pragma once

#include <stdexcept>
#include <string>

namespace wulffkit {

/// Base class for all recoverable domain failures (bad input, invalid
/// geometry, violated preconditions). The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LatticeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class GeometryError : public DomainError {
 public:
  enum class Kind { Unbounded, Empty, NotInterior, Degenerate };

  GeometryError(Kind kind, const std::string& what) : DomainError(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace wulffkit
