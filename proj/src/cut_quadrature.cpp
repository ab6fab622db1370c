// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0

#include "cut_quadrature.hpp"

#include <cmath>

namespace cutstokes {

namespace {

void append_triangle(QuadratureRule& out, const std::array<Vec2, 3>& tri, int degree) {
  const TriRule& ref = triangle_rule(degree);
  const Vec2 e1 = tri[1] - tri[0];
  const Vec2 e2 = tri[2] - tri[0];
  const double det = std::abs(e1.x() * e2.y() - e1.y() * e2.x());
  for (size_t q = 0; q < ref.points.size(); ++q) {
    out.points.push_back(tri[0] + e1 * ref.points[q].x() + e2 * ref.points[q].y());
    out.weights.push_back(ref.weights[q] * det);
  }
}

}  // namespace

CutDecomposition decompose(const Mesh& m, int e, const NodalLevelSet& nls) {
  double f[3];
  Vec2 v[3];
  for (int k = 0; k < 3; ++k) {
    f[k] = nls.values[m.elements[e][k]];
    v[k] = m.vertex(e, k);
    require(f[k] != 0.0, ErrorCode::geometry, "decompose: unsnapped zero vertex value");
  }
  const bool neg[3] = {f[0] < 0.0, f[1] < 0.0, f[2] < 0.0};
  require(!(neg[0] == neg[1] && neg[1] == neg[2]), ErrorCode::geometry,
          "decompose called on uncut element " + std::to_string(e));

  int lone;
  if (neg[0] == neg[1])
    lone = 2;
  else if (neg[0] == neg[2])
    lone = 1;
  else
    lone = 0;
  const int o1 = (lone + 1) % 3, o2 = (lone + 2) % 3;
  const double t1 = f[lone] / (f[lone] - f[o1]);
  const double t2 = f[lone] / (f[lone] - f[o2]);
  const Vec2 p1 = v[lone] + t1 * (v[o1] - v[lone]);
  const Vec2 p2 = v[lone] + t2 * (v[o2] - v[lone]);

  CutDecomposition d;
  const int lone_side = neg[lone] ? 0 : 1;
  d.sub_triangles[lone_side].push_back({v[lone], p1, p2});
  d.sub_triangles[1 - lone_side].push_back({p1, v[o1], v[o2]});
  d.sub_triangles[1 - lone_side].push_back({p1, v[o2], p2});
  d.interface_segment = {p1, p2};

  const Vec2 g = p1_gradient(m, e, nls);
  require(g.norm() > 0.0, ErrorCode::geometry, "decompose: degenerate interpolant gradient");
  d.segment_normal = g.normalized();
  return d;
}

QuadratureRule physical_triangle_rule(const std::array<Vec2, 3>& tri, int degree) {
  QuadratureRule r;
  append_triangle(r, tri, degree);
  return r;
}

QuadratureRule subdomain_rule(const CutDecomposition& d, int phase, int degree) {
  require(phase == 0 || phase == 1, ErrorCode::invalid_argument, "phase must be 0 or 1");
  QuadratureRule r;
  for (const auto& tri : d.sub_triangles[phase]) append_triangle(r, tri, degree);
  return r;
}

QuadratureRule interface_rule(const CutDecomposition& d, int degree) {
  const Rule1D& gl = gauss_legendre(gauss_point_count(degree));
  const Vec2& a = d.interface_segment[0];
  const Vec2& b = d.interface_segment[1];
  const double len = (b - a).norm();
  QuadratureRule r;
  for (size_t q = 0; q < gl.x.size(); ++q) {
    r.points.push_back(a + gl.x[q] * (b - a));
    r.weights.push_back(gl.w[q] * len);
    r.normals.push_back(d.segment_normal);
  }
  return r;
}

QuadratureRule element_rule(const Mesh& m, int e, int degree) {
  QuadratureRule r;
  append_triangle(r, {m.vertex(e, 0), m.vertex(e, 1), m.vertex(e, 2)}, degree);
  return r;
}

}  // namespace cutstokes
