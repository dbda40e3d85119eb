#pragma once

#include <stdexcept>
#include <string>

namespace brep {

// Malformed or out-of-domain input supplied by a caller.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A checked object failed its defining identity (e.g. not a homomorphism).
class not_a_homomorphism : public invalid_input {
 public:
  using invalid_input::invalid_input;
};

// An internal consistency check failed; indicates a bug, never bad input.
class invariant_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class division_by_zero : public std::domain_error {
 public:
  division_by_zero() : std::domain_error("division by zero in finite field") {}
};

}  // namespace brep
