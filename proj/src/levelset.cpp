// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0

#include "levelset.hpp"

#include <algorithm>
#include <cmath>

namespace cutstokes {

LevelSet make_circle_levelset(const Vec2& center, double radius) {
  require(radius > 0.0, ErrorCode::invalid_argument, "circle radius must be positive");
  LevelSet ls;
  ls.value = [center, radius](const Vec2& x) { return (x - center).norm() - radius; };
  ls.gradient = [center](const Vec2& x) -> Vec2 {
    const Vec2 d = x - center;
    const double n = d.norm();
    // The gradient is only queried near the interface, far from the center.
    if (n == 0.0) return Vec2(1.0, 0.0);
    return d / n;
  };
  ls.description = "circle";
  return ls;
}

NodalLevelSet interpolate_p1(const LevelSet& ls, const Mesh& m, double eps_rel) {
  // Snap threshold per vertex: eps_rel times the largest incident diameter.
  std::vector<double> hv(m.num_vertices(), 0.0);
  for (int e = 0; e < m.num_elements(); ++e)
    for (int k = 0; k < 3; ++k) {
      int v = m.elements[e][k];
      hv[v] = std::max(hv[v], m.element_diameter[e]);
    }
  NodalLevelSet nls;
  nls.values.resize(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) {
    double val = ls.value(m.vertices[v]);
    const double eps = eps_rel * hv[v];
    if (std::abs(val) < eps) val = eps;
    nls.values[v] = val;
  }
  return nls;
}

Vec2 p1_gradient(const Mesh& m, int e, const NodalLevelSet& nls) {
  const Vec2& a = m.vertex(e, 0);
  const Vec2& b = m.vertex(e, 1);
  const Vec2& c = m.vertex(e, 2);
  const double inv_det = 1.0 / (2.0 * m.element_area(e));
  auto perp = [](const Vec2& d) { return Vec2(-d.y(), d.x()); };
  return inv_det * (nls.values[m.elements[e][0]] * perp(c - b) +
                    nls.values[m.elements[e][1]] * perp(a - c) +
                    nls.values[m.elements[e][2]] * perp(b - a));
}

CutTopology classify(const NodalLevelSet& nls, const Mesh& m) {
  const int ne = m.num_elements();
  CutTopology ct;
  ct.element_class.resize(ne);
  ct.cut_fraction.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const double f0 = nls.values[m.elements[e][0]];
    const double f1 = nls.values[m.elements[e][1]];
    const double f2 = nls.values[m.elements[e][2]];
    if (f0 < 0.0 && f1 < 0.0 && f2 < 0.0) {
      ct.element_class[e] = ElementClass::neg;
      ct.cut_fraction[e] = 1.0;
    } else if (f0 > 0.0 && f1 > 0.0 && f2 > 0.0) {
      ct.element_class[e] = ElementClass::pos;
      ct.cut_fraction[e] = 0.0;
    } else {
      ct.element_class[e] = ElementClass::cut;
      ct.cut_elements.push_back(e);
      // Area fraction of {I_h phi < 0}: the lone vertex determines a single
      // sub-triangle with edge-intersection parameters t = f_l / (f_l - f_o).
      int lone = -1;
      const double f[3] = {f0, f1, f2};
      const bool neg0 = f0 < 0.0, neg1 = f1 < 0.0, neg2 = f2 < 0.0;
      if (neg0 == neg1)
        lone = 2;
      else if (neg0 == neg2)
        lone = 1;
      else
        lone = 0;
      const double fl = f[lone];
      const double t1 = fl / (fl - f[(lone + 1) % 3]);
      const double t2 = fl / (fl - f[(lone + 2) % 3]);
      const double lone_fraction = t1 * t2;
      ct.cut_fraction[e] = (fl < 0.0) ? lone_fraction : 1.0 - lone_fraction;
    }
  }

  auto meets = [&](int e, int phase) {
    return ct.element_class[e] == ElementClass::cut ||
           ct.element_class[e] == static_cast<ElementClass>(phase);
  };
  for (int phase = 0; phase < 2; ++phase)
    for (int e = 0; e < ne; ++e)
      if (meets(e, phase)) ct.extended_elements[phase].push_back(e);

  for (int fi = 0; fi < m.num_faces(); ++fi) {
    const Face& f = m.faces[fi];
    if (f.boundary) continue;
    const bool any_cut = ct.element_class[f.elem[0]] == ElementClass::cut ||
                         ct.element_class[f.elem[1]] == ElementClass::cut;
    if (!any_cut) continue;
    for (int phase = 0; phase < 2; ++phase)
      if (meets(f.elem[0], phase) && meets(f.elem[1], phase))
        ct.ghost_faces[phase].push_back(fi);
  }
  return ct;
}

}  // namespace cutstokes
