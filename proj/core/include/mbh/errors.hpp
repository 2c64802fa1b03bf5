#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mbh {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Result leaves the representable double range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// A series hit its term cap without converging.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class InfiniteCondition : public Error {
 public:
  using Error::Error;
};

// Evaluation point on the wrong side of a disk boundary.
class WrongSide : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Warning-grade conditions are appended here when a sink is supplied.
struct Diagnostics {
  std::vector<std::string> warnings;
  void warn(std::string msg) { warnings.push_back(std::move(msg)); }
};

inline void warn(Diagnostics* d, std::string msg) {
  if (d != nullptr) d->warn(std::move(msg));
}

}  // namespace mbh
