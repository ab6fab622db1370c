// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "levelset.hpp"

namespace cutstokes {

// Reference P2/P1 Lagrange bases on the triangle (0,0),(1,0),(0,1).
// P2 local order: v0, v1, v2, e01, e12, e20 (matching Mesh::p2_node).
void p2_ref(const Vec2& ref, double val[6], Vec2 grad[6]);
void p1_ref(const Vec2& ref, double val[3], Vec2 grad[3]);

// Taylor-Hood pair with domain-wise doubled DOFs on cut supports. Velocity
// scalar nodes are P2 nodes; pressure nodes are vertices. A node is doubled
// iff some element of its support is cut; phase 0 then keeps the base index
// and phase 1 gets the appended copy. With enrich_velocity off the velocity
// is single-valued (both phases share the base index); pressure is always
// enriched.
struct DofLayout {
  const Mesh* mesh = nullptr;
  bool enrich_velocity = true;
  int n_vel_scalar = 0;  // velocity node instances (per component)
  int n_pres = 0;        // pressure node instances
  std::vector<int> vel_inst[2];   // per P2 node, -1 when phase absent
  std::vector<int> pres_inst[2];  // per vertex, -1 when phase absent
  std::vector<int> boundary_vel_dofs;  // strong Dirichlet rows
  std::vector<int> boundary_nodes;     // P2 nodes on the outer boundary

  int n_vel() const { return 2 * n_vel_scalar; }
  int n_total() const { return n_vel() + n_pres; }
  int vel_dof(int inst, int comp) const { return 2 * inst + comp; }
  int pres_dof(int inst) const { return n_vel() + inst; }

  // Local instance lookups; fail when the element lies outside the phase's
  // extended domain.
  int vel_instance(int e, int phase, int local) const;
  int pres_instance(int e, int phase, int local_vertex) const;
};

DofLayout build_layout(const Mesh& m, const CutTopology& ct, bool enrich_velocity);

// Evaluation of a discrete field on element e using the phase-i coefficient
// copies as polynomials on the whole element (the canonical extension; no
// phase masking). `grad_transform` maps reference gradients to physical ones.
struct VelSample {
  Vec2 value;
  Mat2 grad;  // grad(i, j) = d u_i / d x_j
};
VelSample eval_velocity(const DofLayout& L, const Eigen::VectorXd& coeffs, int e,
                        int phase, const Vec2& ref, const Mat2& grad_transform);

struct PresSample {
  double value;
  Vec2 grad;
};
PresSample eval_pressure(const DofLayout& L, const Eigen::VectorXd& coeffs, int e,
                         int phase, const Vec2& ref, const Mat2& grad_transform);

// Nodal interpolation of per-phase analytic fields. Node positions are
// supplied by the caller (deformed positions when the isoparametric mapping
// is active). `side_of` picks the branch for instances shared by both phases.
struct FieldSet {
  std::function<Vec2(const Vec2&)> velocity[2];
  std::function<double(const Vec2&)> pressure[2];
};
Eigen::VectorXd interpolate_fields(const DofLayout& L,
                                   const std::vector<Vec2>& p2_positions,
                                   const FieldSet& fields,
                                   const std::function<int(const Vec2&)>& side_of);

}  // namespace cutstokes
