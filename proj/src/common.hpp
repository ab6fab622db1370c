// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace cutstokes {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// Error categories; mirrored 1:1 by the C API status codes.
enum class ErrorCode {
  invalid_argument = 1,
  io = 2,
  geometry = 3,
  singular_system = 4,
  internal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace cutstokes
