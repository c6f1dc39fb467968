#pragma once

#include <stdexcept>
#include <string>

namespace erasure_lab {

// Malformed or inconsistent arguments: bad dimensions, unknown labels,
// invalid probabilities, scenario invariant violations.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A spectral function was asked for outside its domain, e.g. log of a
// matrix with eigenvalues below the floor.
class SupportError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The scenario is valid but describes a case the simulator does not model.
class UnsupportedScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace erasure_lab
