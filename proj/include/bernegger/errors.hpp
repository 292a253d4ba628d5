#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bernegger {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter or argument lies outside its admissible domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A function fails one of the exposure-curve requirements.
class InvalidCurveError : public Error {
 public:
  using Error::Error;
};

// The construction exists but carries no continuous part (e.g. g = 1).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class InvalidDistributionError : public Error {
 public:
  using Error::Error;
};

class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

// Malformed input; line is 1-based and counts the header.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace bernegger
