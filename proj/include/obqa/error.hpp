#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace obqa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that failed to parse; carries the 1-based line number of the offender.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace obqa
