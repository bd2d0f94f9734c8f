#pragma once

#include <stdexcept>

namespace oblivisort {

/// Thrown when a caller violates a documented precondition.
struct contract_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline void require(bool condition, const char* message) {
  if (!condition) throw contract_error(message);
}

}  // namespace oblivisort
