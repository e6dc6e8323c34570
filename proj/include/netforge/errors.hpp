#pragma once

#include <stdexcept>
#include <string>

namespace netforge {

/// Incompatible vector or matrix dimensions.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace netforge
