#pragma once

#include <stdexcept>
#include <string>

namespace gib {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Root-modulus clusters could not be separated at the requested precision.
struct PrecisionExhausted : Error {
  PrecisionExhausted(const std::string& what, int bits)
      : Error(what), precision_bits(bits) {}
  int precision_bits;
};

struct DegreeTooLarge : Error {
  using Error::Error;
};

struct NotSemisimpleOnClass : Error {
  using Error::Error;
};

struct IllConditioned : Error {
  using Error::Error;
};

struct NoPositiveDefiniteSolution : Error {
  using Error::Error;
};

struct OutOfDomain : Error {
  using Error::Error;
};

struct StoreUnavailable : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace gib
