#pragma once

#include <stdexcept>
#include <string>

namespace levellab {

// Malformed or mismatched inputs (wrong field, bad text form, invalid flags).
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Division by zero and similar value-level failures.
struct arithmetic_error : std::domain_error {
  using std::domain_error::domain_error;
};

// A claimed membership or structural property does not hold.
struct membership_error : std::domain_error {
  using std::domain_error::domain_error;
};

// A configured cap (enumeration size, search bound) was exceeded.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The operation is outside the supported parameter range.
struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace levellab
