// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "common.hpp"

namespace cutstokes {

// 1D rule on [0,1].
struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre rule with n points, exact for degree <= 2n-1 on [0,1].
const Rule1D& gauss_legendre(int n);

inline int gauss_point_count(int degree) { return (degree + 2) / 2; }

// Rule on the reference triangle (0,0),(1,0),(0,1); weights sum to 1/2.
struct TriRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
};

// Exact for all bivariate polynomials up to `degree`, 0 <= degree <= 9.
// Symmetric positive rules up to degree 5, conical product rules beyond.
const TriRule& triangle_rule(int degree);

}  // namespace cutstokes
