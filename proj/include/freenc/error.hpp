#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freenc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Starred letters in an involution-free algebra, or mismatched modes.
class ModeError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

// Evaluation outside the declared domain of an oracle or a matrix function.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularError : public Error {
 public:
  SingularError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

// Problem exceeds the hard caps of a constructive solver.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace freenc
