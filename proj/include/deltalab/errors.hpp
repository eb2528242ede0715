#pragma once

#include <stdexcept>
#include <string>

namespace deltalab {

// Bad input: malformed scenario, out-of-domain parameter, negative cost.
// The CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A property the library guarantees did not hold (e.g. a switch without a
// window certificate). The CLI maps this to exit code 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace deltalab
