#ifndef JMAP_ERROR_HPP
#define JMAP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace jmap {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid construction parameters or malformed input (bad prime, reducible
// modulus, index out of range, unparsable JSON, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Operands belong to different fields or have incompatible shapes.
class Mismatch : public Error {
 public:
  using Error::Error;
};

// Division by zero, inverse of a singular matrix.
class ZeroDivision : public Error {
 public:
  using Error::Error;
};

// Input lies outside what the theory covers: characteristic 2 with the
// normalized product, n < 2, zero start matrix for a certificate, domains too
// large to enumerate.
class Unsupported : public Error {
 public:
  using Error::Error;
};

// A map was evaluated outside of its tabulated or admissible domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace jmap

#endif  // JMAP_ERROR_HPP
