#pragma once

#include <stdexcept>
#include <string>

namespace halfturn {

// Base class for every failure raised by the library. The CLI maps
// DomainError subclasses to exit code 1 and PrecisionExhausted to 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateParams : public DomainError {
 public:
  explicit DegenerateParams(const std::string& what)
      : DomainError("DegenerateParams: " + what) {}
};

class DegenerateLines : public DomainError {
 public:
  explicit DegenerateLines(const std::string& what)
      : DomainError("DegenerateLines: " + what) {}
};

class DegenerateCircle : public DomainError {
 public:
  explicit DegenerateCircle(const std::string& what)
      : DomainError("DegenerateCircle: " + what) {}
};

class DegenerateSymbol : public DomainError {
 public:
  explicit DegenerateSymbol(const std::string& what)
      : DomainError("DegenerateSymbol: " + what) {}
};

class NonSquarefree : public DomainError {
 public:
  explicit NonSquarefree(const std::string& what)
      : DomainError("NonSquarefree: " + what) {}
};

class ScanExhausted : public DomainError {
 public:
  explicit ScanExhausted(const std::string& what)
      : DomainError("ScanExhausted: " + what) {}
};

class ParseError : public DomainError {
 public:
  explicit ParseError(const std::string& what)
      : DomainError("ParseError: " + what) {}
};

// Raised when a certified decision could not be made at the working
// precision. Callers are expected to retry at a higher precision.
class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what)
      : Error("PrecisionExhausted: " + what) {}
};

}  // namespace halfturn
