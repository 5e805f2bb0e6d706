#pragma once

#include <stdexcept>
#include <string>

namespace hypfl {

/// Base error. `name()` is the machine-readable tag the CLI prints.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

// Usage or input-format problems (CLI exit code 2).
class ValidationError : public Error {
 public:
  using Error::Error;
  explicit ValidationError(const std::string& what) : Error("ValidationError", what) {}
};

// Violated numerical hypotheses (CLI exit code 1).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class RootCollision : public NumericalError {
 public:
  explicit RootCollision(const std::string& what) : NumericalError("RootCollision", what) {}
};

class NegativeImaginary : public NumericalError {
 public:
  explicit NegativeImaginary(const std::string& what)
      : NumericalError("NegativeImaginary", what) {}
};

class PhaseValidationFailed : public NumericalError {
 public:
  explicit PhaseValidationFailed(const std::string& what)
      : NumericalError("PhaseValidationFailed", what) {}
};

class PartitionOfUnityFailure : public NumericalError {
 public:
  explicit PartitionOfUnityFailure(const std::string& what)
      : NumericalError("PartitionOfUnityFailure", what) {}
};

class NyquistHeadroom : public ValidationError {
 public:
  explicit NyquistHeadroom(const std::string& what) : ValidationError("NyquistHeadroom", what) {}
};

class GridMismatch : public ValidationError {
 public:
  explicit GridMismatch(const std::string& what) : ValidationError("GridMismatch", what) {}
};

// GFN1 decoding.
class BadMagic : public ValidationError {
 public:
  explicit BadMagic(const std::string& what) : ValidationError("BadMagic", what) {}
};

class TruncatedPayload : public ValidationError {
 public:
  explicit TruncatedPayload(const std::string& what) : ValidationError("TruncatedPayload", what) {}
};

class UnsupportedDimension : public ValidationError {
 public:
  explicit UnsupportedDimension(const std::string& what) : ValidationError("UnsupportedDimension", what) {}
};

class InvalidGridSize : public ValidationError {
 public:
  explicit InvalidGridSize(const std::string& what) : ValidationError("InvalidGridSize", what) {}
};

class TrailingData : public ValidationError {
 public:
  explicit TrailingData(const std::string& what) : ValidationError("TrailingData", what) {}
};

}  // namespace hypfl
