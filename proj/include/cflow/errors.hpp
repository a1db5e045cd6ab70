#pragma once

#include <stdexcept>
#include <string>

namespace cflow {

// Base class for all solver errors. Messages are prefixed with the module
// that raised them ("flow:", "integrator:", ...) plus the offending parameters.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A resolvent denominator |E_i - E_k| fell below the configured floor for a
// pair that is actually coupled (|H_int(i,k)| > 0).
class NearDegeneracyError : public Error {
public:
  NearDegeneracyError(int i, int k, double gap, double gap_floor, double g);
  int level_i() const { return i_; }
  int level_k() const { return k_; }
  double gap() const { return gap_; }

private:
  int i_;
  int k_;
  double gap_;
};

class StepLimitError : public Error {
public:
  StepLimitError(long max_steps, double g);
};

class StepUnderflowError : public Error {
public:
  StepUnderflowError(double h, double g);
};

class ChainMismatchError : public Error {
public:
  explicit ChainMismatchError(double g);
};

class ZeroRampRateError : public Error {
public:
  ZeroRampRateError();
};

class NoConvergenceError : public Error {
public:
  NoConvergenceError(int sweeps, double off_norm);
};

class UnsupportedOperatorError : public Error {
public:
  explicit UnsupportedOperatorError(int power);
};

}  // namespace cflow
