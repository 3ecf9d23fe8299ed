#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zbnet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class PajekSyntaxError : public Error {
 public:
  PajekSyntaxError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyName : public Error {
 public:
  using Error::Error;
};

class ConflictingRules : public Error {
 public:
  using Error::Error;
};

class EmptySubject : public Error {
 public:
  using Error::Error;
};

class NoSamplesAboveXmin : public Error {
 public:
  using Error::Error;
};

}  // namespace zbnet
