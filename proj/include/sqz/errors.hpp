#pragma once

#include <stdexcept>
#include <string>

namespace sqz {

// Bad user input: malformed config, invalid grid, unknown shape. CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Arrays or matrices whose sizes do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite values or failed convergence during a run. CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Propagators concatenated out of chronological order.
class SequencingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Input violates a documented precondition (e.g. asymmetric matrix, unnormalized LO).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A search could not bracket its target.
class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Output files that cannot be written. CLI exit code 4.
class IOError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sqz
