// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for building test fixtures.
#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "levelset.hpp"
#include "mesh.hpp"

namespace cutstokes::testing {

// A mesh consisting of `count` pairwise unconnected random triangles in
// [-1,1]^2 together with nodal level-set values of mixed sign on each
// triangle, so every element is cut.
struct RandomCutSuite {
  Mesh mesh;
  NodalLevelSet nodal;
};

inline RandomCutSuite random_cut_suite(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> value(0.05, 1.0);

  std::vector<std::array<Vec2, 3>> tris;
  tris.reserve(count);
  while (static_cast<int>(tris.size()) < count) {
    std::array<Vec2, 3> t;
    for (auto& v : t) v = Vec2(coord(rng), coord(rng));
    const double twice_area = (t[1] - t[0]).x() * (t[2] - t[0]).y() -
                              (t[1] - t[0]).y() * (t[2] - t[0]).x();
    if (std::abs(twice_area) < 2e-4) continue;  // avoid near-degenerate shapes
    if (twice_area < 0.0) std::swap(t[1], t[2]);
    tris.push_back(t);
  }

  const std::string path = "/tmp/cutstokes_random_suite.mesh";
  {
    std::ofstream out(path);
    out << 3 * count << ' ' << count << '\n';
    char buf[80];
    for (const auto& t : tris)
      for (const auto& v : t) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x(), v.y());
        out << buf;
      }
    for (int e = 0; e < count; ++e)
      out << 3 * e << ' ' << 3 * e + 1 << ' ' << 3 * e + 2 << '\n';
  }
  RandomCutSuite suite{read_mesh(path), {}};
  std::remove(path.c_str());

  suite.nodal.values.resize(3 * count);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<int> flip(0, 1);
  for (int e = 0; e < count; ++e) {
    // One vertex on one side, two on the other; random magnitudes.
    const int lone = pick(rng);
    const double lone_sign = flip(rng) ? 1.0 : -1.0;
    for (int k = 0; k < 3; ++k)
      suite.nodal.values[3 * e + k] = (k == lone ? lone_sign : -lone_sign) * value(rng);
  }
  return suite;
}

}  // namespace cutstokes::testing
