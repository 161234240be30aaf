#pragma once

#include <optional>

#include "iwastat/error.hpp"

// Error code thrown by f, or nullopt when it returns normally.
template <class F>
std::optional<iwastat::ErrorCode> error_code(F&& f) {
  try {
    f();
  } catch (const iwastat::Error& e) {
    return e.code();
  }
  return std::nullopt;
}
