#pragma once

#include <cmath>
#include <functional>

#include "doctest.h"
#include "wiso/error.hpp"

namespace wiso::test {

inline double rel_err(double got, double want) {
  return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
}

// Runs fn and reports the ErrorCode it threw; fails the test if nothing was thrown.
inline ErrorCode thrown_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a wiso::Error");
  return ErrorCode::Domain;
}

}  // namespace wiso::test
