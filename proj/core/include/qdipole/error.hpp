#pragma once

#include <stdexcept>
#include <string>

namespace qd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// argument outside the documented domain of a function
class DomainError : public Error {
 public:
  using Error::Error;
};

// series / iteration / quadrature did not converge
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// bad configuration or inconsistent physical parameters
class ValidationError : public Error {
 public:
  using Error::Error;
};

// state matrix failed a positivity / hermiticity check
class NumericalStateError : public Error {
 public:
  using Error::Error;
};

}  // namespace qd
