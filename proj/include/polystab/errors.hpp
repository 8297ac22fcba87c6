#pragma once

#include <stdexcept>
#include <string>

namespace polystab {

// Malformed user input: parse failures, dimension mismatches, invalid problem data.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation was called outside its stated preconditions (membership, anchor
// feasibility, multiplier signs).
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A hypothesis required for an exact identity fails and the operation refuses to
// proceed rather than return a set it cannot certify.
struct qualification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two independently computed exact values disagreed, or an internal invariant
// broke. Always a bug in this library, never a property of the input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace polystab
