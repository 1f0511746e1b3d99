#pragma once

#include <stdexcept>

namespace modp {

/// An internal invariant was broken (a library bug, not bad input).
class invariant_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace modp
