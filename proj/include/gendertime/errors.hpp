#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gendertime {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line` is 1-based; 0 when the location is a byte
// offset instead (see `offset`).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t offset = 0)
      : Error(what), line_(line), offset_(offset) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

class BuildError : public Error {
 public:
  using Error::Error;
};

// Argument outside the documented domain of an operation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A shift endpoint has no usable p(F) for the requested name and year.
class EndpointMissingError : public Error {
 public:
  EndpointMissingError(const std::string& name, int year)
      : Error("no p(F) for '" + name + "' at year " + std::to_string(year)),
        name_(name),
        year_(year) {}

  const std::string& name() const noexcept { return name_; }
  int year() const noexcept { return year_; }

 private:
  std::string name_;
  int year_;
};

}  // namespace gendertime
