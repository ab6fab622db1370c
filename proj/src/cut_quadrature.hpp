// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "levelset.hpp"
#include "quadrature.hpp"

namespace cutstokes {

// Sub-triangulation of a cut element along the zero line of I_h(phi).
// Snapping upstream guarantees the 1 + 2 sub-triangle topology.
struct CutDecomposition {
  std::array<std::vector<std::array<Vec2, 3>>, 2> sub_triangles;  // [neg, pos]
  std::array<Vec2, 2> interface_segment;
  Vec2 segment_normal;  // unit, points from {phi<0} into {phi>0}
};

CutDecomposition decompose(const Mesh& m, int e, const NodalLevelSet& nls);

// Points in physical coordinates; volume weights carry area measure,
// interface weights length measure with per-point normals.
struct QuadratureRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  std::vector<Vec2> normals;
};

QuadratureRule subdomain_rule(const CutDecomposition& d, int phase, int degree);
QuadratureRule interface_rule(const CutDecomposition& d, int degree);

// Rule over a whole (uncut) element.
QuadratureRule element_rule(const Mesh& m, int e, int degree);

// Rule over an arbitrary triangle.
QuadratureRule physical_triangle_rule(const std::array<Vec2, 3>& tri, int degree);

}  // namespace cutstokes
