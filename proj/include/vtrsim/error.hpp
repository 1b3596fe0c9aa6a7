#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vtrsim {

// Base for every failure caused by input data or configuration. The CLI maps
// ConfigError to the usage exit code, the rest to the data exit code, and
// anything else to the internal-error code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class UnknownIdError : public Error {
 public:
  using Error::Error;
};

class DuplicateIdError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Pipeline precondition failures: empty quartile pool, zero-staff UDA,
// rankings over mismatched university sets.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace vtrsim
