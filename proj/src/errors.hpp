// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "assembly.hpp"

namespace cutstokes {

struct ErrorReport {
  int level = 0;
  long long ndof = 0;
  double e_up = 0.0;       // ||p - p_h||_L2 + ||u - u_h||_H1 (broken, full norm)
  double e_u_l2 = 0.0;     // ||u - u_h||_L2
  double e_u_h1semi = 0.0; // broken H1 seminorm of the velocity error
  double e_p_l2 = 0.0;     // ||p - p_h||_L2 after mean shift
  std::optional<double> eoc_up;
  std::optional<double> eoc_u_l2;
};

// Phase-wise error quadrature over the (possibly mapped) subdomains; exact
// branches are selected by the discrete geometry side. The discrete pressure
// mean is shifted to zero before comparison.
ErrorReport compute_errors(const Discretization& d, const Problem& prob,
                           const Eigen::VectorXd& solution, int degree = 6);

// eoc_L = log2(e_{L-1} / e_L) attached in place; absent where undefined.
void attach_eoc(std::vector<ErrorReport>& reports);

}  // namespace cutstokes
