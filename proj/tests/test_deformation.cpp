// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "deformation.hpp"

using namespace cutstokes;

namespace {

constexpr double kRadius = 2.0 / 3.0;

struct Scene {
  Mesh mesh;
  LevelSet ls;
  NodalLevelSet nodal;
  CutTopology topo;
  MeshDeformation def;
};

Scene make_scene(int n, int refinements) {
  Scene s{build_structured(n), make_circle_levelset(Vec2(0.0, 0.0), kRadius), {}, {}, {}};
  for (int i = 0; i < refinements; ++i) s.mesh = refine_uniform(s.mesh);
  s.nodal = interpolate_p1(s.ls, s.mesh);
  s.topo = classify(s.nodal, s.mesh);
  s.def = build_deformation(s.mesh, s.ls, s.nodal, s.topo);
  return s;
}

double phase_area(const Scene& s, int phase, int degree) {
  double acc = 0.0;
  for (int e = 0; e < s.mesh.num_elements(); ++e) {
    const ElementClass c = s.topo.element_class[e];
    if (c == ElementClass::cut) {
      const CutDecomposition d = decompose(s.mesh, e, s.nodal);
      const MappedQuadrature mq = map_rule(subdomain_rule(d, phase, degree), s.def, e, false);
      for (double w : mq.weights) acc += w;
    } else if (static_cast<int>(c) == phase) {
      const MappedQuadrature mq = map_rule(element_rule(s.mesh, e, degree), s.def, e, false);
      for (double w : mq.weights) acc += w;
    }
  }
  return acc;
}

struct InterfaceStats {
  double length = 0.0;
  double max_distance = 0.0;  // max | |x| - r | over mapped interface points
};

InterfaceStats interface_stats(const Scene& s, const MeshDeformation& def, int degree) {
  InterfaceStats st;
  for (int e : s.topo.cut_elements) {
    const CutDecomposition d = decompose(s.mesh, e, s.nodal);
    const MappedQuadrature mq = map_rule(interface_rule(d, degree), def, e, true);
    for (size_t q = 0; q < mq.points.size(); ++q) {
      st.length += mq.weights[q];
      st.max_distance = std::max(st.max_distance, std::abs(mq.points[q].norm() - kRadius));
    }
  }
  return st;
}

}  // namespace

TEST_CASE("a linear level set needs no deformation") {
  const Mesh m = build_structured(6);
  LevelSet ls;
  ls.value = [](const Vec2& x) { return x.x() - 0.31; };
  ls.gradient = [](const Vec2&) { return Vec2(1.0, 0.0); };
  ls.description = "plane";
  const NodalLevelSet nls = interpolate_p1(ls, m);
  const CutTopology topo = classify(nls, m);
  REQUIRE(topo.has_cuts());
  const MeshDeformation def = build_deformation(m, ls, nls, topo);
  for (const Vec2& d : def.displacement) CHECK(d.norm() <= 1e-13);
}

TEST_CASE("displaced nodes satisfy the defining equation") {
  const Scene s = make_scene(8, 0);
  CHECK(!s.def.identity);
  int moved = 0;
  for (int node = 0; node < s.mesh.num_p2_nodes(); ++node) {
    const Vec2 d = s.def.displacement[node];
    if (d.norm() == 0.0) continue;
    ++moved;
    // phi at the displaced position equals the P1 interpolant at the
    // original position (values at vertices, edge averages at edge nodes).
    const Vec2 y = s.def.node_position(node);
    double target;
    if (node < s.mesh.num_vertices()) {
      target = s.nodal.values[node];
    } else {
      const Face& f = s.mesh.faces[node - s.mesh.num_vertices()];
      target = 0.5 * (s.nodal.values[f.v[0]] + s.nodal.values[f.v[1]]);
    }
    CHECK(std::abs(s.ls.value(y) - target) <= 1e-12);
  }
  CHECK(moved > 0);
}

TEST_CASE("displacements are local and clamped") {
  const Scene s = make_scene(8, 1);
  // Collect P2 nodes of cut elements; all other nodes must not move.
  std::set<int> cut_nodes;
  for (int e : s.topo.cut_elements)
    for (int k = 0; k < 6; ++k) cut_nodes.insert(s.mesh.p2_node(e, k));
  for (int node = 0; node < s.mesh.num_p2_nodes(); ++node) {
    if (!cut_nodes.count(node)) {
      CHECK(s.def.displacement[node].norm() == 0.0);
    } else {
      CHECK(s.def.displacement[node].norm() <= 0.5 * s.mesh.max_diameter() + 1e-15);
    }
  }
  // Active elements are exactly those sharing a P2 node with a cut element.
  for (int e = 0; e < s.mesh.num_elements(); ++e) {
    bool shares = false;
    for (int k = 0; k < 6; ++k) shares = shares || cut_nodes.count(s.mesh.p2_node(e, k));
    CHECK(static_cast<bool>(s.def.element_active[e]) == shares);
  }
}

TEST_CASE("identity mapping passes rules through bit for bit") {
  const Scene s = make_scene(4, 0);
  const MeshDeformation id = identity_deformation(s.mesh);
  CHECK(id.identity);
  const QuadratureRule rule = element_rule(s.mesh, 3, 6);
  const MappedQuadrature mq = map_rule(rule, id, 3, false);
  REQUIRE(mq.points.size() == rule.points.size());
  const Mat2 inv_jt = s.mesh.jacobian(3).inverse().transpose();
  for (size_t q = 0; q < rule.points.size(); ++q) {
    CHECK(mq.points[q] == rule.points[q]);
    CHECK(mq.weights[q] == rule.weights[q]);
    // The gradient transform reduces to the plain affine one.
    CHECK((mq.grad_transform[q] - inv_jt).norm() <= 1e-15);
  }
}

TEST_CASE("mapped volumes preserve the total area") {
  for (int refinements = 0; refinements <= 1; ++refinements) {
    const Scene s = make_scene(8, refinements);
    const double total = phase_area(s, 0, 6) + phase_area(s, 1, 6);
    CHECK(std::abs(total - 4.0) <= 1e-11);
  }
}

TEST_CASE("deformation squeezes the disc area error at third order or better") {
  // The signed area error oscillates step to step (positive and negative
  // gaps along the interface cancel), so the order is judged in aggregate.
  const double exact = std::numbers::pi * kRadius * kRadius;
  std::vector<double> errs;
  for (int refinements = 0; refinements <= 3; ++refinements) {
    const Scene s = make_scene(8, refinements);
    errs.push_back(std::abs(phase_area(s, 0, 6) - exact));
  }
  const double aggregate = std::log2(errs.front() / errs.back()) / (errs.size() - 1);
  CHECK(aggregate >= 2.5);
  CHECK(errs.back() <= 1e-7);
}

TEST_CASE("mapped interface tracks the circle, unmapped stays second order") {
  const double exact_len = 2.0 * std::numbers::pi * kRadius;
  std::vector<double> mapped_dist, ident_dist, len_err;
  for (int refinements = 0; refinements <= 3; ++refinements) {
    const Scene s = make_scene(8, refinements);
    const MeshDeformation id = identity_deformation(s.mesh);
    const InterfaceStats ms = interface_stats(s, s.def, 9);
    const InterfaceStats is = interface_stats(s, id, 9);
    mapped_dist.push_back(ms.max_distance);
    ident_dist.push_back(is.max_distance);
    len_err.push_back(std::abs(ms.length - exact_len));
  }
  const int steps = static_cast<int>(mapped_dist.size()) - 1;
  // Point distance per step on the finest pair plus aggregate orders; the
  // max-norm functional is too noisy for clean per-step windows.
  CHECK(std::log2(mapped_dist[steps - 1] / mapped_dist[steps]) >= 2.5);
  CHECK(std::log2(mapped_dist.front() / mapped_dist.back()) / steps >= 2.7);
  const double ident_last = std::log2(ident_dist[steps - 1] / ident_dist[steps]);
  CHECK(ident_last >= 1.6);
  CHECK(ident_last <= 2.4);
  CHECK(std::log2(ident_dist.front() / ident_dist.back()) / steps >= 1.6);
  CHECK(std::log2(ident_dist.front() / ident_dist.back()) / steps <= 2.4);
  CHECK(std::log2(len_err.front() / len_err.back()) / steps >= 2.5);
  CHECK(mapped_dist.back() < 0.01 * ident_dist.back());
}

TEST_CASE("jacobians of the mapping stay positive on active elements") {
  const Scene s = make_scene(8, 0);
  for (int e = 0; e < s.mesh.num_elements(); ++e) {
    if (!s.def.element_active[e]) continue;
    for (const Vec2 ref : {Vec2(0.2, 0.3), Vec2(0.6, 0.1), Vec2(0.05, 0.9)}) {
      Vec2 y;
      Mat2 dpsi;
      eval_deformation(s.def, e, ref, &y, &dpsi);
      CHECK(dpsi.determinant() > 0.0);
    }
  }
}

TEST_CASE("global continuity of the deformation across element borders") {
  const Scene s = make_scene(8, 0);
  for (const Face& f : s.mesh.faces) {
    if (f.boundary) continue;
    const int e0 = f.elem[0], e1 = f.elem[1];
    if (!s.def.element_active[e0] && !s.def.element_active[e1]) continue;
    // Sample three points along the shared edge from both sides.
    for (double t : {0.25, 0.5, 0.75}) {
      const Vec2 x = (1.0 - t) * s.mesh.vertices[f.v[0]] + t * s.mesh.vertices[f.v[1]];
      Vec2 y0, y1;
      eval_deformation(s.def, e0, s.mesh.to_reference(e0, x), &y0, nullptr);
      eval_deformation(s.def, e1, s.mesh.to_reference(e1, x), &y1, nullptr);
      CHECK((y0 - y1).norm() <= 1e-13);
    }
  }
}
