// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "levelset.hpp"

namespace cutstokes {

// Manufactured two-phase Stokes problem. Each phase branch is an analytic
// field defined on all of the domain, so evaluation never depends on which
// side of the discrete interface a quadrature point lands on.
struct Problem {
  std::string name;
  LevelSet levelset;
  double mu[2] = {1.0, 1.0};
  double rho[2] = {1.0, 1.0};
  bool has_exact = false;
  std::function<Vec2(const Vec2&)> velocity[2];
  std::function<Mat2(const Vec2&)> velocity_grad[2];  // (i,j) = d u_i / d x_j
  std::function<double(const Vec2&)> pressure[2];
  std::function<Vec2(const Vec2&)> body_force[2];
  // Interface force density; receives the unit normal pointing out of phase 0.
  std::function<Vec2(const Vec2&, const Vec2&)> surface_force;
  std::function<Vec2(const Vec2&)> dirichlet;
};

// Registry: "kirchhart-circle" (rotational flow with pressure jump across a
// circle of radius 2/3), "linear-patch" (globally smooth rigid rotation with
// linear pressure), "pressure-jump" (zero velocity, piecewise constant
// pressure). `center` translates the interface; the manufactured fields
// translate with it.
Problem make_problem(const std::string& name, const Vec2& center = Vec2::Zero());
std::vector<std::string> problem_names();

}  // namespace cutstokes
