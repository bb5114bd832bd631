#pragma once

#include <stdexcept>
#include <string>

namespace graphmf {

/// Malformed or contract-violating input (maps to CLI exit code 1).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested operation is outside what the library decides (e.g. equivalence on loop edges).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A library invariant failed; indicates a bug rather than bad input (exit code 2).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace graphmf
