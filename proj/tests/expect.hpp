#pragma once

#include <functional>

#include <gtest/gtest.h>

#include "helpers.hpp"

namespace charp::testing {

inline ::testing::AssertionResult throws_kind(ErrorKind kind, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    if (e.kind() == kind) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "threw " << e.what();
  }
  return ::testing::AssertionFailure() << "did not throw " << error_kind_name(kind);
}

}  // namespace charp::testing
