#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bondperc {

// Base of every error raised by the library. Callers that only want to
// report and exit can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (bad vertex id, p outside [0,1], ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Exact integer arithmetic would leave the signed 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// The requested computation exceeds a configured work bound.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class IrregularGraph : public Error {
 public:
  IrregularGraph(std::size_t witness, std::size_t degree, std::size_t expected)
      : Error("graph is not regular: vertex " + std::to_string(witness) + " has degree " +
              std::to_string(degree) + ", expected " + std::to_string(expected)),
        witness_(witness) {}

  std::size_t witness() const noexcept { return witness_; }

 private:
  std::size_t witness_;
};

}  // namespace bondperc
