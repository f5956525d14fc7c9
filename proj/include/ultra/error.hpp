#pragma once

#include <stdexcept>
#include <string>

namespace ultra {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (bad JSON, non-canonical rational,
/// negative distance, index out of range).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Arithmetic left the checked 64-bit range. Never silent.
class OverflowError : public InputError {
 public:
  using InputError::InputError;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A brute-force oracle refused an input above its size bound.
class LimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace ultra
