#include "lazard/errors.hpp"

#include <utility>

namespace lazard {

IntegralityViolation::IntegralityViolation(int exponent, std::string coefficient)
    : Error("coefficient " + coefficient + " at exponent " + std::to_string(exponent) +
            " is not integral"),
      exponent_(exponent),
      coefficient_(std::move(coefficient)) {}

TruncationError::TruncationError(const std::string& what, std::string suggestion)
    : Error(what + " (suggested window: " + suggestion + ")"), suggestion_(std::move(suggestion)) {}

ParseError::ParseError(const std::string& what, std::size_t position)
    : Error(what + " at position " + std::to_string(position)), position_(position) {}

}  // namespace lazard
