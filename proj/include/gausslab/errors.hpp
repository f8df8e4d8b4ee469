#ifndef GAUSSLAB_ERRORS_HPP_
#define GAUSSLAB_ERRORS_HPP_

#include <stdexcept>

namespace gausslab {

// An enumeration or memory budget was exhausted before the count finished.
// Callers may raise the cap or switch backends.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A checked integer quantity left its representable range.
struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gausslab

#endif  // GAUSSLAB_ERRORS_HPP_
