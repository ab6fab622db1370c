// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0

#include "mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace cutstokes {

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
}

// Builds faces, element_faces, and diameters; validates orientation and
// conformity (each edge shared by at most two elements).
void finalize(Mesh& m) {
  const int ne = m.num_elements();
  m.element_diameter.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const Vec2& a = m.vertex(e, 0);
    const Vec2& b = m.vertex(e, 1);
    const Vec2& c = m.vertex(e, 2);
    require(signed_area(a, b, c) > 0.0, ErrorCode::geometry,
            "element " + std::to_string(e) + " is not positively oriented");
    m.element_diameter[e] =
        std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
  }

  std::map<std::pair<int, int>, int> face_of;
  m.faces.clear();
  m.element_faces.assign(ne, {-1, -1, -1});
  for (int e = 0; e < ne; ++e) {
    for (int k = 0; k < 3; ++k) {
      int a = m.elements[e][k];
      int b = m.elements[e][(k + 1) % 3];
      auto key = std::minmax(a, b);
      auto it = face_of.find(key);
      if (it == face_of.end()) {
        Face f;
        f.v[0] = key.first;
        f.v[1] = key.second;
        f.elem[0] = e;
        f.elem[1] = -1;
        f.boundary = true;
        f.h_f = m.element_diameter[e];
        face_of.emplace(key, static_cast<int>(m.faces.size()));
        m.element_faces[e][k] = static_cast<int>(m.faces.size());
        m.faces.push_back(f);
      } else {
        Face& f = m.faces[it->second];
        require(f.elem[1] == -1, ErrorCode::geometry,
                "edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                    ") is shared by more than two elements");
        f.elem[1] = e;
        f.boundary = false;
        f.h_f = std::max(f.h_f, m.element_diameter[e]);
        m.element_faces[e][k] = it->second;
      }
    }
  }

  // Renumber faces into (vmin, vmax) lexicographic order so that mesh
  // construction order does not leak into the P2 node numbering.
  std::vector<int> order(m.faces.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return std::make_pair(m.faces[i].v[0], m.faces[i].v[1]) <
           std::make_pair(m.faces[j].v[0], m.faces[j].v[1]);
  });
  std::vector<int> rank(m.faces.size());
  for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);
  std::vector<Face> sorted(m.faces.size());
  for (size_t i = 0; i < order.size(); ++i) sorted[i] = m.faces[order[i]];
  m.faces.swap(sorted);
  for (auto& ef : m.element_faces)
    for (int k = 0; k < 3; ++k) ef[k] = rank[ef[k]];
}

}  // namespace

double Mesh::element_area(int e) const {
  return signed_area(vertex(e, 0), vertex(e, 1), vertex(e, 2));
}

double Mesh::total_area() const {
  double a = 0.0;
  for (int e = 0; e < num_elements(); ++e) a += element_area(e);
  return a;
}

double Mesh::max_diameter() const {
  double h = 0.0;
  for (double d : element_diameter) h = std::max(h, d);
  return h;
}

Mat2 Mesh::jacobian(int e) const {
  Mat2 j;
  j.col(0) = vertex(e, 1) - vertex(e, 0);
  j.col(1) = vertex(e, 2) - vertex(e, 0);
  return j;
}

Vec2 Mesh::to_reference(int e, const Vec2& x) const {
  return jacobian(e).inverse() * (x - vertex(e, 0));
}

Vec2 Mesh::from_reference(int e, const Vec2& ref) const {
  return vertex(e, 0) + jacobian(e) * ref;
}

int Mesh::p2_node(int e, int local) const {
  if (local < 3) return elements[e][local];
  return num_vertices() + element_faces[e][local - 3];
}

Vec2 Mesh::p2_node_position(int node) const {
  if (node < num_vertices()) return vertices[node];
  const Face& f = faces[node - num_vertices()];
  return 0.5 * (vertices[f.v[0]] + vertices[f.v[1]]);
}

std::vector<char> Mesh::boundary_vertex_flags() const {
  std::vector<char> flag(num_vertices(), 0);
  for (const Face& f : faces)
    if (f.boundary) {
      flag[f.v[0]] = 1;
      flag[f.v[1]] = 1;
    }
  return flag;
}

Mesh build_structured(int n) {
  require(n >= 1, ErrorCode::invalid_argument, "structured mesh needs n >= 1");
  Mesh m;
  const int np = n + 1;
  m.vertices.reserve(static_cast<size_t>(np) * np + static_cast<size_t>(n) * n);
  auto coord = [n](int i) { return -1.0 + 2.0 * i / n; };
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < np; ++i) m.vertices.emplace_back(coord(i), coord(j));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      m.vertices.emplace_back(coord(i) + 1.0 / n, coord(j) + 1.0 / n);

  auto grid = [np](int i, int j) { return j * np + i; };
  auto center = [np, n](int i, int j) { return np * np + j * n + i; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      int a = grid(i, j), b = grid(i + 1, j), c = grid(i + 1, j + 1), d = grid(i, j + 1);
      int mid = center(i, j);
      m.elements.push_back({a, b, mid});
      m.elements.push_back({b, c, mid});
      m.elements.push_back({c, d, mid});
      m.elements.push_back({d, a, mid});
    }
  finalize(m);
  return m;
}

Mesh refine_uniform(const Mesh& m) {
  Mesh r;
  r.vertices = m.vertices;
  r.level = m.level + 1;
  // Midpoint ids follow the (sorted) face order of the parent mesh.
  std::vector<int> midpoint(m.num_faces());
  for (int f = 0; f < m.num_faces(); ++f) {
    const Face& face = m.faces[f];
    midpoint[f] = static_cast<int>(r.vertices.size());
    r.vertices.push_back(0.5 * (m.vertices[face.v[0]] + m.vertices[face.v[1]]));
  }
  r.elements.reserve(static_cast<size_t>(m.num_elements()) * 4);
  for (int e = 0; e < m.num_elements(); ++e) {
    int v0 = m.elements[e][0], v1 = m.elements[e][1], v2 = m.elements[e][2];
    int m01 = midpoint[m.element_faces[e][0]];
    int m12 = midpoint[m.element_faces[e][1]];
    int m20 = midpoint[m.element_faces[e][2]];
    r.elements.push_back({v0, m01, m20});
    r.elements.push_back({v1, m12, m01});
    r.elements.push_back({v2, m20, m12});
    r.elements.push_back({m01, m12, m20});
  }
  finalize(r);
  return r;
}

Mesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::io, "cannot open mesh file: " + path);
  int nv = 0, ne = 0;
  require(static_cast<bool>(in >> nv >> ne), ErrorCode::io, "mesh file header malformed: " + path);
  require(nv >= 3 && ne >= 1, ErrorCode::io, "mesh file declares too few entities: " + path);
  Mesh m;
  m.vertices.resize(nv);
  for (int v = 0; v < nv; ++v)
    require(static_cast<bool>(in >> m.vertices[v].x() >> m.vertices[v].y()), ErrorCode::io,
            "mesh file vertex " + std::to_string(v) + " malformed");
  m.elements.resize(ne);
  for (int e = 0; e < ne; ++e) {
    auto& el = m.elements[e];
    require(static_cast<bool>(in >> el[0] >> el[1] >> el[2]), ErrorCode::io,
            "mesh file element " + std::to_string(e) + " malformed");
    for (int k = 0; k < 3; ++k)
      require(el[k] >= 0 && el[k] < nv, ErrorCode::io,
              "mesh file element " + std::to_string(e) + " has vertex index out of range");
  }
  finalize(m);

  // Conformity: no vertex may sit in the interior of a face.
  for (int f = 0; f < m.num_faces(); ++f) {
    const Vec2& a = m.vertices[m.faces[f].v[0]];
    const Vec2& b = m.vertices[m.faces[f].v[1]];
    const Vec2 d = b - a;
    const double len2 = d.squaredNorm();
    for (int v = 0; v < nv; ++v) {
      if (v == m.faces[f].v[0] || v == m.faces[f].v[1]) continue;
      const Vec2 r = m.vertices[v] - a;
      const double t = r.dot(d) / len2;
      if (t <= 1e-12 || t >= 1.0 - 1e-12) continue;
      const double dist = std::abs(d.x() * r.y() - d.y() * r.x()) / std::sqrt(len2);
      require(dist > 1e-12 * std::sqrt(len2), ErrorCode::geometry,
              "hanging vertex " + std::to_string(v) + " on face " + std::to_string(f));
    }
  }
  return m;
}

void write_mesh(const Mesh& m, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::io, "cannot open mesh file for writing: " + path);
  out << m.num_vertices() << ' ' << m.num_elements() << '\n';
  char buf[80];
  for (const Vec2& v : m.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x(), v.y());
    out << buf;
  }
  for (const auto& el : m.elements) out << el[0] << ' ' << el[1] << ' ' << el[2] << '\n';
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

}  // namespace cutstokes
