#pragma once

#include <stdexcept>
#include <string>

namespace spfl {

/// Raised when an input object breaks a structural precondition
/// (malformed permutation, element outside the range, bad roster...).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an instance exceeds a configured size guard.
class SizeLimitError : public std::length_error {
public:
    explicit SizeLimitError(const std::string& what) : std::length_error(what) {}
};

}  // namespace spfl
