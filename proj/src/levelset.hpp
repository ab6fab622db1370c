// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "mesh.hpp"

namespace cutstokes {

// Analytic level set; the zero set is the interface. Phase 0 is {phi < 0}
// (the disc for the circle), phase 1 is {phi > 0}.
struct LevelSet {
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> gradient;
  std::string description;
};

LevelSet make_circle_levelset(const Vec2& center, double radius);

// Vertex values of the linear interpolant I_h(phi), snapped away from zero:
// |value| < eps_rel * h_T(v) is replaced by +eps_rel * h_T(v), so no vertex
// ever lies on the discrete interface.
struct NodalLevelSet {
  std::vector<double> values;
};

NodalLevelSet interpolate_p1(const LevelSet& ls, const Mesh& m, double eps_rel = 1e-12);

enum class ElementClass : unsigned char { neg = 0, pos = 1, cut = 2 };

struct CutTopology {
  std::vector<ElementClass> element_class;
  std::vector<double> cut_fraction;   // |T cap {I_h phi < 0}| / |T|; 1 on neg, 0 on pos
  std::vector<int> cut_elements;
  std::array<std::vector<int>, 2> ghost_faces;         // F_i: both neighbors meet
                                                       // phase i, at least one cut
  std::array<std::vector<int>, 2> extended_elements;   // Omega_i^+: phase i or cut
  bool has_cuts() const { return !cut_elements.empty(); }
};

CutTopology classify(const NodalLevelSet& nls, const Mesh& m);

// Gradient of I_h(phi) on element e (constant per element).
Vec2 p1_gradient(const Mesh& m, int e, const NodalLevelSet& nls);

}  // namespace cutstokes
