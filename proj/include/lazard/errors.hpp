#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lazard {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched rings, bad exponent vectors, out-of-range generator counts.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

// A division left the coefficient domain (e.g. a non-p-integral coefficient).
class IntegralityViolation : public Error {
 public:
  IntegralityViolation(int exponent, std::string coefficient);
  int exponent() const { return exponent_; }
  const std::string& coefficient() const { return coefficient_; }

 private:
  int exponent_;
  std::string coefficient_;
};

// A requested exponent or degree lies outside the computed window.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, std::string suggestion);
  const std::string& suggestion() const { return suggestion_; }

 private:
  std::string suggestion_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

// An internal identity that must hold failed; indicates a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace lazard
