#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadham {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mixed basis sizes (K) or incompatible matrix dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Operator degree beyond what the algebra supports (words longer than 4
// internally, polynomials of degree > 2 at the public boundary).
class DegreeError : public Error {
 public:
  using Error::Error;
};

// Syntax or resolution failure in a Hamiltonian expression.  `position` is
// the byte offset into the source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// gamma is not Hermitian or the Weyl remainder has an imaginary part.
class NonSymmetricError : public Error {
 public:
  using Error::Error;
};

// A commutator [H, O_i] did not close over the linear basis span.
class NotClosedError : public Error {
 public:
  using Error::Error;
};

// Invalid argument outside any more specific category (K < 1, unknown model
// id or parameter, singular model parameters, bad bracket, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation requires a Real-phase spectrum (or, for growth estimation, a
// Broken-phase trajectory).
class PhaseError : public Error {
 public:
  using Error::Error;
};

// Eigenvalues could not be matched into +/- or conjugate pairs.
class PairingError : public Error {
 public:
  using Error::Error;
};

// Eigensolver did not converge.  Carries whatever eigenvalues were obtained
// before the iteration cap.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& msg,
                   std::vector<std::complex<double>> partial)
      : Error(msg), partial_values_(std::move(partial)) {}
  const std::vector<std::complex<double>>& partial_values() const {
    return partial_values_;
  }

 private:
  std::vector<std::complex<double>> partial_values_;
};

}  // namespace quadham
