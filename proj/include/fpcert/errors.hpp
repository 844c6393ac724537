#pragma once

#include <stdexcept>
#include <string>

namespace fpcert {

// Base of every error thrown by this library. Catching fpcert::error at the
// boundary is enough to translate any validation/domain failure into a
// diagnostic exit.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed value handed to an operation: empty set, dimension mismatch,
// non-finite coordinate, out-of-range numeric argument.
class invalid_input_error : public error {
 public:
  using error::error;
};

// A tabulated map was evaluated at a point not in its domain.
class map_domain_error : public error {
 public:
  using error::error;
};

// Condition parameters outside the admissible range of the chosen tag.
class invalid_condition_error : public error {
 public:
  using error::error;
};

// A stated precondition of an operation does not hold (e.g. the candidate
// passed to the uniqueness check is not actually a fixed point).
class precondition_error : public error {
 public:
  using error::error;
};

// The iteration produced a non-finite iterate.
class divergence_error : public error {
 public:
  using error::error;
};

// Structural or consistency failure in a problem file.
class validation_error : public error {
 public:
  using error::error;
};

}  // namespace fpcert
