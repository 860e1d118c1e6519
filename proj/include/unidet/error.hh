#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace unidet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. line() is 1-based; 0 when the input has no lines.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class AlphabetError : public Error {
 public:
  using Error::Error;
};

class StateNotPresent : public Error {
 public:
  using Error::Error;
};

// A value violates the invariants of its type (or an internal pipeline
// precondition does not hold).
class InvariantError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

// Automaton is missing required structure, e.g. an edge of a DPA.
class StructuralError : public Error {
 public:
  using Error::Error;
};

}  // namespace unidet
