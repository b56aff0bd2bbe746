// rdgap: errors.hpp
// Exception types shared by every module.
#pragma once

#include <stdexcept>
#include <string>

namespace rdgap {

/// A precondition on an argument was violated (bad spectrum, out-of-range
/// distortion, malformed literal). The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric routine failed to converge or hit a degenerate point. The CLI
/// maps this to exit code 1.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

}  // namespace detail
}  // namespace rdgap
