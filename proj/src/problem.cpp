// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0

#include "problem.hpp"

#include <cmath>

namespace cutstokes {

namespace {

constexpr double kRadius = 2.0 / 3.0;
constexpr double kPi = 3.14159265358979323846;

Problem make_kirchhart_circle(const Vec2& c) {
  Problem p;
  p.name = "kirchhart-circle";
  p.levelset = make_circle_levelset(c, kRadius);
  p.mu[0] = 1.0;
  p.mu[1] = 10.0;
  p.rho[0] = p.rho[1] = 1.0;
  p.has_exact = true;

  const double mu1 = p.mu[0], mu2 = p.mu[1];
  // Velocity u = f(|z|^2) * (-z_y, z_x), z = x - c, with an amplitude that is
  // 1/mu_1 e^{-s} inside and 1/mu_2 e^{-s} + k outside; k makes u continuous
  // across |z| = r.
  const double k = (1.0 / mu1 - 1.0 / mu2) * std::exp(-kRadius * kRadius);
  auto amplitude = [mu1, mu2, k](int phase, double s, double* deriv) {
    const double e = std::exp(-s);
    const double inv_mu = phase == 0 ? 1.0 / mu1 : 1.0 / mu2;
    if (deriv) *deriv = -inv_mu * e;
    return phase == 0 ? inv_mu * e : inv_mu * e + k;
  };
  for (int phase = 0; phase < 2; ++phase) {
    p.velocity[phase] = [c, amplitude, phase](const Vec2& x) -> Vec2 {
      const Vec2 z = x - c;
      const double f = amplitude(phase, z.squaredNorm(), nullptr);
      return f * Vec2(-z.y(), z.x());
    };
    p.velocity_grad[phase] = [c, amplitude, phase](const Vec2& x) -> Mat2 {
      const Vec2 z = x - c;
      double df;
      const double f = amplitude(phase, z.squaredNorm(), &df);
      const Vec2 w(-z.y(), z.x());
      Mat2 rot;
      rot << 0.0, -1.0, 1.0, 0.0;
      return 2.0 * df * w * z.transpose() + f * rot;
    };
  }

  // Pressure (x_1 - c_1)^3 with a jump of 1/2 across the interface; the
  // constant makes the mean over the domain zero.
  const double c1 = c.x();
  const double cube_integral = 0.5 * (std::pow(1.0 - c1, 4) - std::pow(1.0 + c1, 4));
  const double offset = -(cube_integral + 0.5 * kPi * kRadius * kRadius) / 4.0;
  p.pressure[0] = [c1, offset](const Vec2& x) {
    return std::pow(x.x() - c1, 3) + 0.5 + offset;
  };
  p.pressure[1] = [c1, offset](const Vec2& x) { return std::pow(x.x() - c1, 3) + offset; };

  // -div(mu_i D(u)) + grad p with rho_i = 1; identical in both phases since
  // mu_i cancels against the 1/mu_i amplitude and the constant k drops out.
  for (int phase = 0; phase < 2; ++phase)
    p.body_force[phase] = [c, c1](const Vec2& x) -> Vec2 {
      const Vec2 z = x - c;
      const double s = z.squaredNorm();
      const double a = 4.0 * (2.0 - s) * std::exp(-s);
      const double dx1 = x.x() - c1;
      return Vec2(-a * z.y() + 3.0 * dx1 * dx1, a * z.x());
    };

  // Interface data matching the pressure jump [p] = 1/2: the momentum
  // balance needs -(jump of sigma n) = -[p] n on the right-hand side.
  p.surface_force = [](const Vec2&, const Vec2& n) -> Vec2 { return -0.5 * n; };
  p.dirichlet = p.velocity[1];
  return p;
}

Problem make_linear_patch(const Vec2& c) {
  Problem p;
  p.name = "linear-patch";
  p.levelset = make_circle_levelset(c, kRadius);
  p.has_exact = true;
  for (int phase = 0; phase < 2; ++phase) {
    p.velocity[phase] = [](const Vec2& x) { return Vec2(-x.y(), x.x()); };
    p.velocity_grad[phase] = [](const Vec2&) {
      Mat2 rot;
      rot << 0.0, -1.0, 1.0, 0.0;
      return rot;
    };
    p.pressure[phase] = [](const Vec2& x) { return x.x(); };
    p.body_force[phase] = [](const Vec2&) { return Vec2(1.0, 0.0); };
  }
  p.surface_force = [](const Vec2&, const Vec2&) { return Vec2::Zero(); };
  p.dirichlet = p.velocity[0];
  return p;
}

Problem make_pressure_jump(const Vec2& c) {
  Problem p;
  p.name = "pressure-jump";
  p.levelset = make_circle_levelset(c, kRadius);
  p.has_exact = true;
  const double offset = -0.5 * kPi * kRadius * kRadius / 4.0;
  for (int phase = 0; phase < 2; ++phase) {
    p.velocity[phase] = [](const Vec2&) { return Vec2::Zero(); };
    p.velocity_grad[phase] = [](const Vec2&) { return Mat2::Zero(); };
    p.pressure[phase] = [phase, offset](const Vec2&) {
      return (phase == 0 ? 0.5 : 0.0) + offset;
    };
    p.body_force[phase] = [](const Vec2&) { return Vec2::Zero(); };
  }
  p.surface_force = [](const Vec2&, const Vec2& n) -> Vec2 { return -0.5 * n; };
  p.dirichlet = [](const Vec2&) { return Vec2::Zero(); };
  return p;
}

}  // namespace

Problem make_problem(const std::string& name, const Vec2& center) {
  if (name == "kirchhart-circle") return make_kirchhart_circle(center);
  if (name == "linear-patch") return make_linear_patch(center);
  if (name == "pressure-jump") return make_pressure_jump(center);
  fail(ErrorCode::invalid_argument, "unknown problem: " + name);
}

std::vector<std::string> problem_names() {
  return {"kirchhart-circle", "linear-patch", "pressure-jump"};
}

}  // namespace cutstokes
