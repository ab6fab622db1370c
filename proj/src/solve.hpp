// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "assembly.hpp"

namespace cutstokes {

struct SolveReport {
  double relative_residual = 0.0;
  double factor_time = 0.0;  // seconds
  double solve_time = 0.0;   // seconds
  long long nnz = 0;
  double pressure_mean = 0.0;
};

// Direct sparse LU solve of the saddle system. Throws on singular systems,
// reporting an estimated rank deficiency for small matrices.
Eigen::VectorXd factor_solve(const SystemAssembly& sys, SolveReport* report);

}  // namespace cutstokes
