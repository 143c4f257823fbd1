#pragma once

#include <stdexcept>
#include <string>

namespace netdef {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad sizes, bad file contents, out-of-range parameters.
// The CLI maps this to exit code 2.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(what) {}
};

// Invalid attacker/defender placement (duplicates, overlap, bad ids,
// unreachable nodes, retry exhaustion). CLI exit code 3.
class PlacementError : public Error {
 public:
  explicit PlacementError(const std::string& what) : Error(what) {}
};

// Singular output controllability Gramian: the pair (A, B) is not
// controllable over the requested horizon. CLI exit code 3.
class ControllabilityError : public Error {
 public:
  explicit ControllabilityError(const std::string& what) : Error(what) {}
};

// Singular model matrix where an inverse is required (grid M or D_L).
// CLI exit code 4.
class SingularModelError : public Error {
 public:
  explicit SingularModelError(const std::string& what) : Error(what) {}
};

// Numerical failures: shape mismatches, overflow, non-convergence,
// defective eigenbases.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(what) {}
};

}  // namespace netdef
