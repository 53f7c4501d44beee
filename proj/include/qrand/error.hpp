#pragma once

#include <stdexcept>
#include <string>

namespace qrand {

/// Base class of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes disagree (vector lengths, qubit counts, matrix dimensions).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds what the dense / exhaustive code paths are sized for.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDegreeError : public Error {
 public:
  using Error::Error;
};

/// A linear test (or witness string) that is not meaningful, e.g. the zero test.
class InvalidTestError : public Error {
 public:
  using Error::Error;
};

class DependentGeneratorsError : public Error {
 public:
  using Error::Error;
};

class NotAbelianError : public Error {
 public:
  using Error::Error;
};

class InconsistentSignsError : public Error {
 public:
  using Error::Error;
};

class SymmetryError : public Error {
 public:
  using Error::Error;
};

class NotApplicableError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A self-check failed; indicates a library bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qrand
