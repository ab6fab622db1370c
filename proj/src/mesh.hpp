// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "common.hpp"

namespace cutstokes {

// An edge of the triangulation. Faces double as the P2 edge-node carriers,
// so their ordering must be deterministic: faces are sorted by (vmin, vmax).
struct Face {
  int v[2];      // vertex ids, v[0] < v[1]
  int elem[2];   // adjacent elements, elem[1] == -1 on the boundary
  double h_f;    // max diameter of the adjacent elements
  bool boundary;
};

// Conforming triangulation of [-1,1]^2. Immutable after construction.
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> elements;       // CCW vertex triples
  std::vector<Face> faces;
  std::vector<std::array<int, 3>> element_faces;  // local edges (01,12,20)
  std::vector<double> element_diameter;
  int level = 0;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_elements() const { return static_cast<int>(elements.size()); }
  int num_faces() const { return static_cast<int>(faces.size()); }

  const Vec2& vertex(int e, int local) const { return vertices[elements[e][local]]; }

  double element_area(int e) const;
  double total_area() const;
  double max_diameter() const;

  // Affine map of element e: x = v0 + J * (xi, eta).
  Mat2 jacobian(int e) const;
  Vec2 to_reference(int e, const Vec2& x) const;
  Vec2 from_reference(int e, const Vec2& ref) const;

  // P2 node bookkeeping: nodes 0..NV-1 are vertices, NV..NV+NF-1 edge midpoints.
  int num_p2_nodes() const { return num_vertices() + num_faces(); }
  int p2_node(int e, int local) const;   // local in 0..5 (v0,v1,v2,e01,e12,e20)
  Vec2 p2_node_position(int node) const;

  std::vector<char> boundary_vertex_flags() const;
};

// Criss-cross mesh: each of the n*n squares is split into 4 triangles by its
// centroid, giving 4n^2 elements and (n+1)^2 + n^2 vertices.
Mesh build_structured(int n);

// Red refinement: each triangle is split into 4 via its edge midpoints.
Mesh refine_uniform(const Mesh& m);

// Plain-text interchange: line 1 "NV NE", then NV lines "x y", then NE lines
// "i j k" (0-based, counter-clockwise).
Mesh read_mesh(const std::string& path);
void write_mesh(const Mesh& m, const std::string& path);

}  // namespace cutstokes
