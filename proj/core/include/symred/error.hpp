#pragma once

#include <stdexcept>
#include <string>

namespace symred {

// Every error raised by the library derives from Error so callers (the CLI in
// particular) can map the whole family onto one exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Array dimensions disagree with the algebra or coordinate layout.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Evaluation point lies outside the configured domain box.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A bracket, Hamiltonian or integrator was asked for a combination it does not
// support (missing internal variables, Boris on a non-magnetic bracket, ...).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// The dual element is not coadjoint invariant; carries the first offending
// index pair (0-based) and the size of the residual there.
class InvarianceError : public Error {
 public:
  InvarianceError(const std::string& what, int s, int k, double residual)
      : Error(what), s_(s), k_(k), residual_(residual) {}

  int s() const { return s_; }
  int k() const { return k_; }
  double residual() const { return residual_; }

 private:
  int s_;
  int k_;
  double residual_;
};

class MissingPotentialError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Integration produced a non-finite state.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, long step)
      : NumericalError(what), step_(step) {}

  long step() const { return step_; }

 private:
  long step_;
};

// Input to an inverse operator (inverse curl, Poisson solve) is not in the
// range of the forward operator; defect() is the measured obstruction.
class NotInRangeError : public Error {
 public:
  NotInRangeError(const std::string& what, double defect)
      : Error(what), defect_(defect) {}

  double defect() const { return defect_; }

 private:
  double defect_;
};

}  // namespace symred
