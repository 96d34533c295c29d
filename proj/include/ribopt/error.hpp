#pragma once

#include <stdexcept>
#include <string>

namespace ribopt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejected input: malformed geometry, out-of-range parameters, bad files.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& what, int line)
      : InvalidInput(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

// No admissible configuration exists for the requested budget.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace ribopt
