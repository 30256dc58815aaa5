#pragma once

#include <stdexcept>
#include <string>

namespace simon {

// Exit-code mapping used by the CLI: Usage/Parse -> 2, Guard -> 3, the rest -> 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class GuardExceeded : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace simon
