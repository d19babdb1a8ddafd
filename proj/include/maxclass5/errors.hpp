#pragma once

#include <stdexcept>
#include <string>

namespace maxclass5 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An invalid presentation parameter; `field()` names the offending key.
class ParamError : public Error {
 public:
  ParamError(std::string field, const std::string& what)
      : Error("invalid parameter '" + field + "': " + what),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class StructureError : public Error {
 public:
  using Error::Error;
};

/// Raised when a subgroup is not contained in, or not normal in, its source.
class IndexError : public Error {
 public:
  using Error::Error;
};

class UnsupportedQuotient : public Error {
 public:
  using Error::Error;
};

class BadGenerator : public Error {
 public:
  using Error::Error;
};

class SweepError : public Error {
 public:
  using Error::Error;
};

/// A request that would enumerate more than the guarded size.
class SizeGuard : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class PrecondError : public Error {
 public:
  using Error::Error;
};

class MissingS : public Error {
 public:
  using Error::Error;
};

}  // namespace maxclass5
