// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0

#include "errors.hpp"

#include <cmath>

namespace cutstokes {

namespace {

// Shared volume visitor for error norms (own quadrature degree).
template <typename F>
void for_each_error_point(const Discretization& d, int degree, F&& f) {
  const Mesh& m = *d.mesh;
  for (int e = 0; e < m.num_elements(); ++e) {
    const ElementClass cls = d.topo->element_class[e];
    if (cls == ElementClass::cut) {
      const CutDecomposition dec = decompose(m, e, *d.nodal);
      for (int phase = 0; phase < 2; ++phase) {
        const QuadratureRule rule = subdomain_rule(dec, phase, degree);
        const MappedQuadrature q = map_rule(rule, *d.deformation, e, false);
        for (size_t i = 0; i < q.points.size(); ++i)
          f(e, phase, q.points[i], q.ref_points[i], q.grad_transform[i], q.weights[i]);
      }
    } else {
      const int phase = static_cast<int>(cls);
      const QuadratureRule rule = element_rule(m, e, degree);
      const MappedQuadrature q = map_rule(rule, *d.deformation, e, false);
      for (size_t i = 0; i < q.points.size(); ++i)
        f(e, phase, q.points[i], q.ref_points[i], q.grad_transform[i], q.weights[i]);
    }
  }
}

}  // namespace

ErrorReport compute_errors(const Discretization& d, const Problem& prob,
                           const Eigen::VectorXd& solution, int degree) {
  require(prob.has_exact, ErrorCode::invalid_argument,
          "problem \"" + prob.name + "\" carries no exact solution");
  const DofLayout& L = *d.layout;

  // One pass accumulating all quadratic forms; the pressure mean shift is
  // applied algebraically afterwards.
  double l2u = 0.0, h1semi = 0.0;
  double p_sq = 0.0, p_lin = 0.0, p_disc = 0.0, volume = 0.0;
  for_each_error_point(
      d, degree,
      [&](int e, int phase, const Vec2& y, const Vec2& ref, const Mat2& gt, double w) {
        const VelSample uh = eval_velocity(L, solution, e, phase, ref, gt);
        const PresSample ph = eval_pressure(L, solution, e, phase, ref, gt);
        const Vec2 du = prob.velocity[phase](y) - uh.value;
        const Mat2 dg = prob.velocity_grad[phase](y) - uh.grad;
        const double dp = prob.pressure[phase](y) - ph.value;
        l2u += w * du.squaredNorm();
        h1semi += w * dg.squaredNorm();
        p_sq += w * dp * dp;
        p_lin += w * dp;
        p_disc += w * ph.value;
        volume += w;
      });

  const double mean = p_disc / volume;  // discrete pressure mean
  const double l2p = p_sq + 2.0 * mean * p_lin + mean * mean * volume;

  ErrorReport r;
  r.level = d.mesh->level;
  r.ndof = L.n_total();
  r.e_u_l2 = std::sqrt(l2u);
  r.e_u_h1semi = std::sqrt(h1semi);
  r.e_p_l2 = std::sqrt(std::max(0.0, l2p));
  r.e_up = r.e_p_l2 + std::sqrt(l2u + h1semi);
  return r;
}

void attach_eoc(std::vector<ErrorReport>& reports) {
  for (size_t i = 1; i < reports.size(); ++i) {
    if (reports[i - 1].e_up > 0.0 && reports[i].e_up > 0.0)
      reports[i].eoc_up = std::log2(reports[i - 1].e_up / reports[i].e_up);
    if (reports[i - 1].e_u_l2 > 0.0 && reports[i].e_u_l2 > 0.0)
      reports[i].eoc_u_l2 = std::log2(reports[i - 1].e_u_l2 / reports[i].e_u_l2);
  }
}

}  // namespace cutstokes
