// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "assembly.hpp"
#include "solve.hpp"

using namespace cutstokes;

namespace {

constexpr double kRadius = 2.0 / 3.0;

// Owning bundle mirroring the non-owning Discretization.
struct Scene {
  Mesh mesh;
  LevelSet ls;
  NodalLevelSet nodal;
  CutTopology topo;
  MeshDeformation def;
  DofLayout layout;
  MaterialParams params;
  int volume_degree = 4;

  Discretization disc() const {
    Discretization d;
    d.mesh = &mesh;
    d.levelset = &ls;
    d.nodal = &nodal;
    d.topo = &topo;
    d.deformation = &def;
    d.layout = &layout;
    d.params = params;
    d.volume_degree = volume_degree;
    d.interface_degree = 9;
    return d;
  }
};

Scene circle_scene(int n, bool enrich, bool iso, double mu0 = 1.0, double mu1 = 10.0) {
  Scene s;
  s.mesh = build_structured(n);
  s.ls = make_circle_levelset(Vec2(0.0, 0.0), kRadius);
  s.nodal = interpolate_p1(s.ls, s.mesh);
  s.topo = classify(s.nodal, s.mesh);
  s.def = iso && s.topo.has_cuts() ? build_deformation(s.mesh, s.ls, s.nodal, s.topo)
                                   : identity_deformation(s.mesh);
  s.layout = build_layout(s.mesh, s.topo, enrich);
  s.params.mu[0] = mu0;
  s.params.mu[1] = mu1;
  s.volume_degree = iso ? 6 : 4;
  return s;
}

Scene uncut_scene(int n, double mu = 1.0) {
  Scene s;
  s.mesh = build_structured(n);
  s.ls = make_circle_levelset(Vec2(10.0, 10.0), 1.0);
  s.nodal = interpolate_p1(s.ls, s.mesh);
  s.topo = classify(s.nodal, s.mesh);
  s.def = identity_deformation(s.mesh);
  s.layout = build_layout(s.mesh, s.topo, true);
  s.params.mu[0] = mu;
  s.params.mu[1] = mu;
  return s;
}

// Interpolate a single-valued analytic pair into both coefficient copies.
Eigen::VectorXd interpolate_single(const Scene& s,
                                   const std::function<Vec2(const Vec2&)>& u,
                                   const std::function<double(const Vec2&)>& p) {
  FieldSet fields;
  for (int phase = 0; phase < 2; ++phase) {
    fields.velocity[phase] = u;
    fields.pressure[phase] = p;
  }
  std::vector<Vec2> pos(s.mesh.num_p2_nodes());
  for (int i = 0; i < s.mesh.num_p2_nodes(); ++i) pos[i] = s.mesh.p2_node_position(i);
  return interpolate_fields(s.layout, pos, fields, [](const Vec2&) { return 0; });
}

double quad_form(const SpMat& m, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return x.dot(m * y);
}

}  // namespace

TEST_CASE("viscous energy of a linear field on the uncut mesh") {
  const Scene s = uncut_scene(4);
  const SpMat a = assemble_viscosity(s.disc());
  // u = (x, -y): D(u) = diag(2, -2), 1/2 mu |D|^2 = 4 per unit area -> 16.
  const Eigen::VectorXd x =
      interpolate_single(s, [](const Vec2& p) { return Vec2(p.x(), -p.y()); },
                         [](const Vec2&) { return 0.0; });
  CHECK(quad_form(a, x, x) == doctest::Approx(16.0).epsilon(1e-12));

  // Rigid motions carry no viscous energy.
  const Eigen::VectorXd rigid =
      interpolate_single(s, [](const Vec2& p) { return Vec2(3.0 - p.y(), p.x()); },
                         [](const Vec2&) { return 0.0; });
  CHECK(std::abs(quad_form(a, rigid, rigid)) <= 1e-12 * quad_form(a, x, x));
}

TEST_CASE("viscosity kernel on the uncut mesh is exactly the rigid motions") {
  const Scene s = uncut_scene(2);
  const SpMat a = assemble_viscosity(s.disc());
  Eigen::MatrixXd dense = Eigen::MatrixXd(a).topLeftCorner(s.layout.n_vel(), s.layout.n_vel());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  const auto& ev = es.eigenvalues();
  int zeros = 0;
  for (int i = 0; i < ev.size(); ++i)
    if (std::abs(ev[i]) < 1e-10 * ev[ev.size() - 1]) ++zeros;
  CHECK(zeros == 3);
}

TEST_CASE("divergence block annihilates divergence-free fields") {
  const Scene s = uncut_scene(3);
  const SpMat b = assemble_divergence(s.disc());
  const Eigen::VectorXd x =
      interpolate_single(s, [](const Vec2& p) { return Vec2(-p.y(), p.x()); },
                         [](const Vec2&) { return 0.0; });
  CHECK((b * x).norm() <= 1e-12);
}

TEST_CASE("divergence pairing against q = 1 gives the negative flux area") {
  const std::string path = "/tmp/cutstokes_asm_tri.mesh";
  std::ofstream(path) << "3 1\n0 0\n1 0\n0 1\n0 1 2\n";
  Scene s;
  s.mesh = read_mesh(path);
  std::remove(path.c_str());
  s.ls = make_circle_levelset(Vec2(10.0, 10.0), 1.0);
  s.nodal = interpolate_p1(s.ls, s.mesh);
  s.topo = classify(s.nodal, s.mesh);
  s.def = identity_deformation(s.mesh);
  s.layout = build_layout(s.mesh, s.topo, true);

  const SpMat b = assemble_divergence(s.disc());
  const Eigen::VectorXd x =
      interpolate_single(s, [](const Vec2& p) { return Vec2(p.x(), 0.0); },
                         [](const Vec2&) { return 1.0; });
  // (B u) . q-part with q = 1: -(div u, 1) = -|T|.
  Eigen::VectorXd ones = Eigen::VectorXd::Zero(s.layout.n_total());
  for (int i = s.layout.n_vel(); i < s.layout.n_total(); ++i) ones[i] = 1.0;
  CHECK(quad_form(b, ones, x) == doctest::Approx(-0.5).epsilon(1e-13));
}

TEST_CASE("interface blocks vanish without cuts") {
  const Scene s = uncut_scene(3);
  CHECK(assemble_nitsche(s.disc()).nonZeros() == 0);
  CHECK(assemble_ghost_penalty(s.disc()).nonZeros() == 0);
}

TEST_CASE("interface penalty is linear in lambda and drops for matched fields") {
  Scene s = circle_scene(8, true, true);
  auto with_lambda = [&](double lam) {
    s.params.lambda_nitsche = lam;
    return assemble_nitsche(s.disc());
  };
  const SpMat n20 = with_lambda(20.0), n40 = with_lambda(40.0), n60 = with_lambda(60.0);
  const SpMat d1 = n40 - n20, d2 = n60 - n40;
  CHECK((Eigen::MatrixXd(d1) - Eigen::MatrixXd(d2)).cwiseAbs().maxCoeff() <=
        1e-12 * Eigen::MatrixXd(n20).cwiseAbs().maxCoeff());

  // A single-valued velocity has no jump: the whole velocity-velocity
  // interface form evaluates to zero on it.
  const Eigen::VectorXd x =
      interpolate_single(s, [](const Vec2& p) { return Vec2(p.x() * p.y(), p.x()); },
                         [](const Vec2&) { return 0.0; });
  s.params.lambda_nitsche = 20.0;
  const SpMat n = assemble_nitsche(s.disc());
  const double scale = Eigen::MatrixXd(n).cwiseAbs().maxCoeff() * x.squaredNorm();
  CHECK(std::abs(quad_form(n, x, x)) <= 1e-12 * scale);
  CHECK_THROWS_AS(with_lambda(0.0), Error);
}

TEST_CASE("ghost penalty of a hand-checked two-element jump") {
  // Two right triangles sharing the vertical edge x = 0; the phase-0
  // pressure copy is x on the left element and 2x on the right, so the
  // normal-derivative jump across the shared face is 1.
  const std::string path = "/tmp/cutstokes_gp_pair.mesh";
  std::ofstream(path) << "4 2\n0 0\n0 1\n-1 0\n1 0\n0 1 2\n0 3 1\n";
  Scene s;
  s.mesh = read_mesh(path);
  std::remove(path.c_str());
  REQUIRE(s.mesh.num_elements() == 2);

  s.ls = make_circle_levelset(Vec2(10.0, 10.0), 1.0);
  s.nodal = interpolate_p1(s.ls, s.mesh);
  s.topo = classify(s.nodal, s.mesh);
  // Fabricate a topology that routes the shared face through the phase-0
  // stabilization set.
  s.topo.element_class = {ElementClass::cut, ElementClass::cut};
  s.topo.cut_fraction = {0.5, 0.5};
  s.topo.cut_elements = {0, 1};
  s.topo.extended_elements[0] = {0, 1};
  s.topo.extended_elements[1] = {0, 1};
  int shared = -1;
  for (int f = 0; f < s.mesh.num_faces(); ++f)
    if (!s.mesh.faces[f].boundary) shared = f;
  REQUIRE(shared >= 0);
  s.topo.ghost_faces[0] = {shared};
  s.topo.ghost_faces[1] = {};
  s.def = identity_deformation(s.mesh);
  s.layout = build_layout(s.mesh, s.topo, true);
  s.params.mu[0] = 1.0;
  s.params.mu[1] = 10.0;
  s.params.gamma_ghost = 0.1;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(s.layout.n_total());
  const double px[4] = {0.0, 0.0, 1.0, 2.0};  // values of x / 2x at the vertices
  for (int v = 0; v < 4; ++v)
    x[s.layout.pres_dof(s.layout.pres_inst[0][v])] = px[v] * (v == 2 ? -1.0 : 1.0);
  // vertex 2 is (-1, 0): value of p = x there is -1.

  const SpMat j = assemble_ghost_penalty(s.disc());
  // gamma * mu_0^{-1} * h_F^3 * |F| * jump^2 with h_F = sqrt(2), |F| = 1.
  const double expected = 0.1 * std::pow(std::sqrt(2.0), 3) * 1.0;
  CHECK(quad_form(j, x, x) == doctest::Approx(expected).epsilon(1e-13));

  // Scaling in gamma and mu.
  s.params.gamma_ghost = 0.2;
  CHECK(quad_form(assemble_ghost_penalty(s.disc()), x, x) ==
        doctest::Approx(2.0 * expected).epsilon(1e-13));
  s.params.gamma_ghost = 0.1;
  s.params.mu[0] = 4.0;
  CHECK(quad_form(assemble_ghost_penalty(s.disc()), x, x) ==
        doctest::Approx(expected / 4.0).epsilon(1e-13));
  s.params.mu[0] = 1.0;
  s.params.gamma_ghost = -1.0;
  CHECK_THROWS_AS(assemble_ghost_penalty(s.disc()), Error);
}

TEST_CASE("ghost penalty vanishes on globally linear pressures") {
  Scene s = circle_scene(8, true, false);
  const SpMat j = assemble_ghost_penalty(s.disc());
  CHECK(j.nonZeros() > 0);
  const Eigen::VectorXd x = interpolate_single(
      s, [](const Vec2&) { return Vec2(0.0, 0.0); },
      [](const Vec2& p) { return 3.0 * p.x() - 2.0 * p.y() + 1.0; });
  const double scale = Eigen::MatrixXd(j).cwiseAbs().maxCoeff() * x.squaredNorm();
  CHECK(std::abs(quad_form(j, x, x)) <= 1e-13 * scale);

  s.params.gamma_ghost = 0.0;
  CHECK(assemble_ghost_penalty(s.disc()).nonZeros() == 0);
}

TEST_CASE("right-hand side: body force against P2 basis integrals") {
  const std::string path = "/tmp/cutstokes_rhs_tri.mesh";
  std::ofstream(path) << "3 1\n0 0\n1 0\n0 1\n0 1 2\n";
  Scene s;
  s.mesh = read_mesh(path);
  std::remove(path.c_str());
  s.ls = make_circle_levelset(Vec2(10.0, 10.0), 1.0);
  s.nodal = interpolate_p1(s.ls, s.mesh);
  s.topo = classify(s.nodal, s.mesh);
  s.def = identity_deformation(s.mesh);
  s.layout = build_layout(s.mesh, s.topo, true);

  Problem prob = make_problem("linear-patch");
  prob.body_force[0] = prob.body_force[1] = [](const Vec2&) { return Vec2(0.0, -1.0); };
  prob.surface_force = [](const Vec2&, const Vec2&) { return Vec2(0.0, 0.0); };
  const Eigen::VectorXd rhs = assemble_rhs(s.disc(), prob);

  // P2 vertex basis functions integrate to zero over a triangle, edge
  // functions to |T|/3.
  for (int local = 0; local < 6; ++local) {
    const int inst = s.layout.vel_inst[1][s.mesh.p2_node(0, local)];
    const double expected = local < 3 ? 0.0 : -0.5 / 3.0;
    CHECK(rhs[s.layout.vel_dof(inst, 1)] == doctest::Approx(expected).epsilon(1e-13));
    CHECK(rhs[s.layout.vel_dof(inst, 0)] == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("interface force term integrates to a flux identity") {
  // With f = c n and a single-valued test field v, the assembled interface
  // term equals c * int_G v . n = c * int_{Omega_1} div v by the divergence
  // theorem on the linear reconstruction.
  Scene s = circle_scene(8, true, false);
  Problem prob = make_problem("kirchhart-circle");
  prob.body_force[0] = prob.body_force[1] = [](const Vec2&) { return Vec2(0.0, 0.0); };
  prob.surface_force = [](const Vec2&, const Vec2& n) { return 0.5 * n; };
  const Eigen::VectorXd rhs = assemble_rhs(s.disc(), prob);
  const Eigen::VectorXd v =
      interpolate_single(s, [](const Vec2& p) { return Vec2(p.x(), 0.0); },
                         [](const Vec2&) { return 0.0; });
  double inner_area = 0.0;  // area of the linear inside region
  for (int e = 0; e < s.mesh.num_elements(); ++e)
    inner_area += s.topo.cut_fraction[e] * s.mesh.element_area(e);
  CHECK(rhs.dot(v) == doctest::Approx(0.5 * inner_area).epsilon(1e-12));
}

TEST_CASE("full system is symmetric with identity block structure") {
  for (const bool iso : {false, true}) {
    const Scene s = circle_scene(8, true, iso);
    const Problem prob = make_problem("kirchhart-circle");
    const SystemAssembly sys = assemble_system(s.disc(), prob);
    REQUIRE(sys.matrix.rows() == s.layout.n_total() + 1);
    const SpMat diff = SpMat(sys.matrix.transpose()) - sys.matrix;
    const double scale = Eigen::MatrixXd(sys.matrix).cwiseAbs().maxCoeff();
    CHECK(Eigen::MatrixXd(diff).cwiseAbs().maxCoeff() <= 1e-12 * scale);

    // Dirichlet rows are unit diagonal with the boundary datum on the rhs.
    for (int dof : s.layout.boundary_vel_dofs)
      for (SpMat::InnerIterator it(sys.matrix, dof); it; ++it)
        CHECK(((it.row() == dof && it.value() == 1.0) || it.value() == 0.0));
    // The boundary data reproduce the exact velocity on the boundary nodes.
    for (int bn : s.layout.boundary_nodes) {
      const Vec2 x = s.mesh.p2_node_position(bn);
      const int inst = s.layout.vel_inst[1][bn];
      REQUIRE(inst >= 0);
      const Vec2 g = prob.dirichlet(x);
      CHECK(sys.rhs[s.layout.vel_dof(inst, 0)] == doctest::Approx(g.x()).epsilon(1e-14));
      CHECK(sys.rhs[s.layout.vel_dof(inst, 1)] == doctest::Approx(g.y()).epsilon(1e-14));
    }
  }
}

TEST_CASE("raw form identity: k((u,p),(u,-p)) = a(u,u) + j(p,p)") {
  const Scene s = circle_scene(8, true, true);
  const Discretization d = s.disc();
  const SpMat raw = assemble_raw(d);
  const SpMat a = SpMat(assemble_viscosity(d)) + assemble_nitsche(d);
  const SpMat j = assemble_ghost_penalty(d);
  std::mt19937 rng(42);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::VectorXd x(s.layout.n_total());
    for (int i = 0; i < x.size(); ++i) x[i] = gauss(rng);
    Eigen::VectorXd flipped = x;
    for (int i = s.layout.n_vel(); i < s.layout.n_total(); ++i) flipped[i] = -x[i];
    const double lhs = quad_form(raw, flipped, x);
    const double rhs = quad_form(a, x, x) + quad_form(j, x, x);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("triple norm is positive on random nonzero vectors") {
  const Scene s = circle_scene(8, true, true);
  std::mt19937 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd x(s.layout.n_total());
    for (int i = 0; i < x.size(); ++i) x[i] = gauss(rng);
    CHECK(triple_norm_squared(s.disc(), x) > 0.0);
  }
}
