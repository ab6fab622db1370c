// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cut_quadrature.hpp"
#include "spaces.hpp"

namespace cutstokes {

// Continuous P2 mesh deformation Psi = id + d moving the linear interface
// reconstruction onto the exact level-set zero line. Nonzero only on cut
// elements and their node-sharing neighbors (one-element blending ring).
struct MeshDeformation {
  const Mesh* mesh = nullptr;
  std::vector<Vec2> displacement;   // per P2 node
  std::vector<char> element_active; // nodes of these elements may move
  bool identity = true;

  Vec2 node_position(int p2node) const {
    return mesh->p2_node_position(p2node) + displacement[p2node];
  }
  std::vector<Vec2> node_positions() const;
};

MeshDeformation identity_deformation(const Mesh& m);

// For each P2 node x of a cut element, displaces x along G = grad(phi)/|grad|
// by t* solving phi(x + t G) = I_h(phi)(x) (safeguarded Newton, tolerance
// 1e-14, max 50 iterations, bisection fallback, |t*| clamped to 0.5 h_T).
MeshDeformation build_deformation(const Mesh& m, const LevelSet& ls,
                                  const NodalLevelSet& nls, const CutTopology& ct);

// Quadrature rule pushed through Psi on one element. For identity
// deformations points, weights, and normals are passed through unchanged.
struct MappedQuadrature {
  std::vector<Vec2> points;              // Psi(q)
  std::vector<double> weights;           // scaled by |det DPsi| or |DPsi tau|
  std::vector<Vec2> normals;             // cofactor-transformed (interface)
  std::vector<Vec2> ref_points;          // reference coords in the undeformed element
  std::vector<Mat2> grad_transform;      // physical gradient = G * reference gradient
};

MappedQuadrature map_rule(const QuadratureRule& rule, const MeshDeformation& d,
                          int element, bool is_interface);

// Deformation value and Jacobian at a reference point of one element.
void eval_deformation(const MeshDeformation& d, int element, const Vec2& ref,
                      Vec2* mapped, Mat2* dpsi);

}  // namespace cutstokes
