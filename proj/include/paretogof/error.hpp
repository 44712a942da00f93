#ifndef PARETOGOF_ERROR_HPP
#define PARETOGOF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pgof {

// Numeric values are shared with the C API status codes.
enum class ErrorCode : int {
  Argument = 1,
  Domain = 2,
  Parse = 3,
  Config = 4,
  Unsupported = 5,
  Degenerate = 6,
  Io = 7,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what) : Error(ErrorCode::Argument, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

/// Input text that cannot be read as data. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line) : Error(ErrorCode::Parse, what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::Config, what) {}
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error(ErrorCode::Unsupported, what) {}
};

/// A statistic hit log(0) (an EDF value of exactly 0 or 1).
class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& what) : Error(ErrorCode::Degenerate, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

}  // namespace pgof

#endif  // PARETOGOF_ERROR_HPP
