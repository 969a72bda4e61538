#pragma once

#include <stdexcept>
#include <string>

namespace coxcert {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (system files, words, subsets, certificates).
struct ParseError : Error {
  ParseError(std::string message, int row = -1, int col = -1)
      : Error(std::move(message)), row(row), col(col) {}
  int row;  // 1-based line of the offending token, -1 if not applicable
  int col;  // 1-based column, -1 if not applicable
};

// Semantically invalid argument: index out of range, word over the wrong
// alphabet, non-spherical subset where a finite one is required, and so on.
struct InvalidArgument : Error {
  using Error::Error;
};

// A configured resource bound was hit (enumeration rank cap, Cayley cap,
// reduction oracle cap, quotient closure cap).
struct CapExceeded : Error {
  using Error::Error;
};

// Two independent routes to the same fact disagreed.  This is never a user
// error; it means the library itself is broken and no output can be trusted.
struct ConsistencyFault : Error {
  using Error::Error;
};

}  // namespace coxcert
