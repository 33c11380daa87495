#ifndef WONDER_ERRORS_HPP
#define WONDER_ERRORS_HPP

#include <stdexcept>

namespace wonder {

// Input is syntactically fine but outside the supported parameter range
// (kapranov n >= 7, missing tower configuration, oversized expansions).
// The CLI maps this to exit code 2, everything else derived from
// std::exception to exit code 1.
struct UnsupportedRangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wonder

#endif
