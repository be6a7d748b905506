#pragma once

#include <stdexcept>

namespace polywave {

// Root iteration hit its cap without meeting the residual tolerance.
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The Bezout coefficient-matching system is rank deficient.
struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A polynomial expected to be nonnegative on the unit circle is not.
struct NegativeOnCircle : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OrderTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LevelMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PowerExceedsMultiplicity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadLength : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace polywave
