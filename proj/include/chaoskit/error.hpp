#pragma once

#include <stdexcept>
#include <string>

namespace chaoskit {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes (validation errors -> 2, budget exhaustion -> 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptySetError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class HorizonMismatchError : public Error {
 public:
  using Error::Error;
};

// A question about a window set that cannot be answered from the window,
// e.g. a spacing gap at or beyond the horizon of P.
class HorizonExceededError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PrecisionError : public Error {
 public:
  using Error::Error;
};

class MeshError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace chaoskit
