#pragma once

#include <functional>
#include <optional>

#include "qlab/error.hpp"

namespace qlab::test {

inline std::optional<ErrorKind> error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace qlab::test
