// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0

#include "deformation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cutstokes {

namespace {

constexpr double kNewtonTol = 1e-14;
constexpr int kNewtonMaxIter = 50;

// Root of phi(x + t G) = target for |t| <= c. Newton iterates are clamped
// into the bracket; bisection takes over when Newton stalls.
double solve_displacement(const LevelSet& ls, const Vec2& x, const Vec2& g,
                          double target, double c, int node) {
  auto residual = [&](double t) { return ls.value(x + t * g) - target; };
  double t = 0.0, ft = residual(0.0);
  for (int it = 0; it < kNewtonMaxIter && std::abs(ft) > kNewtonTol; ++it) {
    const double d = ls.gradient(x + t * g).dot(g);
    if (std::abs(d) < 1e-14) break;
    double tn = std::clamp(t - ft / d, -c, c);
    if (tn == t) break;
    t = tn;
    ft = residual(t);
  }
  if (std::abs(ft) <= kNewtonTol) return t;

  double lo = -c, hi = c;
  double flo = residual(lo), fhi = residual(hi);
  if (std::abs(flo) <= kNewtonTol) return lo;
  if (std::abs(fhi) <= kNewtonTol) return hi;
  require(flo * fhi < 0.0, ErrorCode::geometry,
          "deformation: no level-set crossing along the gradient at node " +
              std::to_string(node));
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = residual(mid);
    if (std::abs(fm) <= kNewtonTol) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  fail(ErrorCode::geometry,
       "deformation: bisection failed to converge at node " + std::to_string(node));
}

}  // namespace

std::vector<Vec2> MeshDeformation::node_positions() const {
  std::vector<Vec2> pos(mesh->num_p2_nodes());
  for (int n = 0; n < mesh->num_p2_nodes(); ++n) pos[n] = node_position(n);
  return pos;
}

MeshDeformation identity_deformation(const Mesh& m) {
  MeshDeformation d;
  d.mesh = &m;
  d.displacement.assign(m.num_p2_nodes(), Vec2::Zero());
  d.element_active.assign(m.num_elements(), 0);
  d.identity = true;
  return d;
}

MeshDeformation build_deformation(const Mesh& m, const LevelSet& ls,
                                  const NodalLevelSet& nls, const CutTopology& ct) {
  MeshDeformation d = identity_deformation(m);
  if (ct.cut_elements.empty()) return d;

  // Per node: interpolant target and the tightest clamp over incident cut
  // elements, so shared nodes are solved once.
  std::map<int, std::pair<double, double>> nodes;  // node -> (target, h_min)
  for (int e : ct.cut_elements) {
    for (int k = 0; k < 6; ++k) {
      const int node = m.p2_node(e, k);
      double target;
      if (k < 3) {
        target = nls.values[m.elements[e][k]];
      } else {
        const Face& f = m.faces[m.element_faces[e][k - 3]];
        target = 0.5 * (nls.values[f.v[0]] + nls.values[f.v[1]]);
      }
      auto [it, inserted] = nodes.emplace(node, std::make_pair(target, m.element_diameter[e]));
      if (!inserted) it->second.second = std::min(it->second.second, m.element_diameter[e]);
    }
  }

  for (const auto& [node, info] : nodes) {
    const Vec2 x = m.p2_node_position(node);
    Vec2 g = ls.gradient(x);
    const double gn = g.norm();
    require(gn > 1e-14, ErrorCode::geometry,
            "deformation: degenerate level-set gradient at node " + std::to_string(node));
    g /= gn;
    const double t = solve_displacement(ls, x, g, info.first, 0.5 * info.second, node);
    d.displacement[node] = t * g;
  }

  for (int e = 0; e < m.num_elements(); ++e)
    for (int k = 0; k < 6; ++k)
      if (nodes.count(m.p2_node(e, k))) {
        d.element_active[e] = 1;
        break;
      }
  d.identity = false;
  return d;
}

void eval_deformation(const MeshDeformation& d, int element, const Vec2& ref,
                      Vec2* mapped, Mat2* dpsi) {
  const Mesh& m = *d.mesh;
  double val[6];
  Vec2 grad[6];
  p2_ref(ref, val, grad);
  const Mat2 inv_jt = m.jacobian(element).inverse().transpose();
  Vec2 disp = Vec2::Zero();
  Mat2 jac = Mat2::Identity();
  for (int k = 0; k < 6; ++k) {
    const Vec2& dk = d.displacement[m.p2_node(element, k)];
    disp += val[k] * dk;
    jac += dk * (inv_jt * grad[k]).transpose();
  }
  if (mapped) *mapped = m.from_reference(element, ref) + disp;
  if (dpsi) *dpsi = jac;
}

MappedQuadrature map_rule(const QuadratureRule& rule, const MeshDeformation& d,
                          int element, bool is_interface) {
  const Mesh& m = *d.mesh;
  const size_t n = rule.points.size();
  MappedQuadrature out;
  out.points.resize(n);
  out.weights.resize(n);
  out.ref_points.resize(n);
  out.grad_transform.resize(n);
  if (is_interface) out.normals.resize(n);

  const Mat2 jac = m.jacobian(element);
  const bool active = !d.identity && d.element_active[element];
  if (!active) {
    const Mat2 inv_jt = jac.inverse().transpose();
    out.points = rule.points;
    out.weights = rule.weights;
    out.normals = rule.normals;
    for (size_t q = 0; q < n; ++q) {
      out.ref_points[q] = m.to_reference(element, rule.points[q]);
      out.grad_transform[q] = inv_jt;
    }
    return out;
  }

  for (size_t q = 0; q < n; ++q) {
    const Vec2 ref = m.to_reference(element, rule.points[q]);
    Vec2 y;
    Mat2 dpsi;
    eval_deformation(d, element, ref, &y, &dpsi);
    const double det = dpsi.determinant();
    require(det > 0.0, ErrorCode::geometry,
            "deformation is not injective on element " + std::to_string(element));
    out.ref_points[q] = ref;
    out.points[q] = y;
    out.grad_transform[q] = (dpsi * jac).inverse().transpose();
    if (is_interface) {
      const Vec2& nrm = rule.normals[q];
      const Vec2 tau(-nrm.y(), nrm.x());
      out.weights[q] = rule.weights[q] * (dpsi * tau).norm();
      Mat2 cof;
      cof << dpsi(1, 1), -dpsi(1, 0), -dpsi(0, 1), dpsi(0, 0);
      out.normals[q] = (cof * nrm).normalized();
    } else {
      out.weights[q] = rule.weights[q] * det;
    }
  }
  return out;
}

}  // namespace cutstokes
