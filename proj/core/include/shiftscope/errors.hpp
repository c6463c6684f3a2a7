#pragma once

#include <stdexcept>
#include <string>

namespace shiftscope {

// Violated precondition or malformed input. The CLI maps these to exit code 2.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Failure inside a numeric component. The CLI maps these to exit code 3.
class ComputeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotInvertibleError : public ContractError {
 public:
  using ContractError::ContractError;
};

// Spectral radius estimate is zero, so no disk around the origin is available.
class DegenerateSpectrumError : public ContractError {
 public:
  using ContractError::ContractError;
};

// An ordering invariant among the spectral quantities failed beyond tolerance.
// This signals an estimator bug, not a property of the operator.
class ChainViolationError : public ComputeError {
 public:
  using ComputeError::ComputeError;
};

// The orbit-norm bound ||W^n e_k|| <= c^n keeps failing near the end of the
// checked horizon; c is likely below the true local spectral radius.
class HypothesisUnmetError : public ComputeError {
 public:
  using ComputeError::ComputeError;
};

class CertificateViolatedError : public ComputeError {
 public:
  using ComputeError::ComputeError;
};

class BoundViolatedError : public ComputeError {
 public:
  using ComputeError::ComputeError;
};

class NoConvergenceError : public ComputeError {
 public:
  using ComputeError::ComputeError;
};

// A requested exact amplitude would leave the representable double range.
class AmplitudeRangeError : public ComputeError {
 public:
  using ComputeError::ComputeError;
};

}  // namespace shiftscope
