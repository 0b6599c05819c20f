#pragma once

#include <stdexcept>
#include <string>

namespace fairbits {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TapeExhausted : Error {
  TapeExhausted() : Error("replay tape exhausted") {}
};

struct DigitUndecidable : Error {
  using Error::Error;
};

struct EnclosureBudgetExceeded : Error {
  using Error::Error;
};

struct NonterminatingQuantile : Error {
  using Error::Error;
};

struct DepthCapTooSmall : Error {
  using Error::Error;
};

struct InvalidLeaf : Error {
  using Error::Error;
};

struct TooFewBits : Error {
  using Error::Error;
};

struct UnknownLaw : Error {
  using Error::Error;
};

// Malformed user input: tapes, epsilon strings, distribution files.
struct InvalidInput : Error {
  using Error::Error;
};

}  // namespace fairbits
