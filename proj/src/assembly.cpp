// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0

#include "assembly.hpp"

#include <vector>

namespace cutstokes {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Visits every element once per phase present in it, with the mapped volume
// rule of that phase's part. Signature: f(element, phase, quad).
template <typename F>
void for_each_volume(const Discretization& d, F&& f) {
  const Mesh& m = *d.mesh;
  for (int e = 0; e < m.num_elements(); ++e) {
    const ElementClass cls = d.topo->element_class[e];
    if (cls == ElementClass::cut) {
      const CutDecomposition dec = decompose(m, e, *d.nodal);
      for (int phase = 0; phase < 2; ++phase) {
        const QuadratureRule rule = subdomain_rule(dec, phase, d.volume_degree);
        f(e, phase, map_rule(rule, *d.deformation, e, false));
      }
    } else {
      const int phase = static_cast<int>(cls);
      const QuadratureRule rule = element_rule(m, e, d.volume_degree);
      f(e, phase, map_rule(rule, *d.deformation, e, false));
    }
  }
}

// Visits every cut element with its mapped interface rule and Nitsche
// weights. Signature: f(element, quad, kappa[2], h_T).
template <typename F>
void for_each_interface(const Discretization& d, F&& f) {
  const Mesh& m = *d.mesh;
  for (int e : d.topo->cut_elements) {
    const CutDecomposition dec = decompose(m, e, *d.nodal);
    const QuadratureRule rule = interface_rule(dec, d.interface_degree);
    double kappa[2];
    kappa[0] = d.topo->cut_fraction[e] <= 0.5 ? 0.0 : 1.0;
    kappa[1] = 1.0 - kappa[0];
    f(e, map_rule(rule, *d.deformation, e, true), kappa, m.element_diameter[e]);
  }
}

SpMat from_triplets(const Triplets& trip, int n) {
  SpMat a(n, n);
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

}  // namespace

SpMat assemble_viscosity(const Discretization& d) {
  const DofLayout& L = *d.layout;
  Triplets trip;
  for_each_volume(d, [&](int e, int phase, const MappedQuadrature& q) {
    int dof[12];
    for (int k = 0; k < 6; ++k) {
      const int inst = L.vel_instance(e, phase, k);
      dof[2 * k] = L.vel_dof(inst, 0);
      dof[2 * k + 1] = L.vel_dof(inst, 1);
    }
    const double mu = d.params.mu[phase];
    Eigen::Matrix<double, 12, 12> loc = Eigen::Matrix<double, 12, 12>::Zero();
    double val[6];
    Vec2 gref[6], g[6];
    for (size_t i = 0; i < q.points.size(); ++i) {
      p2_ref(q.ref_points[i], val, gref);
      for (int k = 0; k < 6; ++k) g[k] = q.grad_transform[i] * gref[k];
      const double w = mu * q.weights[i];
      for (int k = 0; k < 6; ++k)
        for (int l = 0; l < 6; ++l) {
          const double gg = g[k].dot(g[l]);
          for (int c = 0; c < 2; ++c)
            for (int d2 = 0; d2 < 2; ++d2)
              loc(2 * k + c, 2 * l + d2) +=
                  w * ((c == d2 ? gg : 0.0) + g[k][d2] * g[l][c]);
        }
    }
    for (int a = 0; a < 12; ++a)
      for (int b = 0; b < 12; ++b)
        if (loc(a, b) != 0.0) trip.emplace_back(dof[a], dof[b], loc(a, b));
  });
  return from_triplets(trip, L.n_total());
}

SpMat assemble_divergence(const Discretization& d) {
  const DofLayout& L = *d.layout;
  Triplets trip;
  // Volume part: -(div u, q) per phase.
  for_each_volume(d, [&](int e, int phase, const MappedQuadrature& q) {
    int vdof[12], pdof[3];
    for (int k = 0; k < 6; ++k) {
      const int inst = L.vel_instance(e, phase, k);
      vdof[2 * k] = L.vel_dof(inst, 0);
      vdof[2 * k + 1] = L.vel_dof(inst, 1);
    }
    for (int m3 = 0; m3 < 3; ++m3) pdof[m3] = L.pres_dof(L.pres_instance(e, phase, m3));
    Eigen::Matrix<double, 3, 12> loc = Eigen::Matrix<double, 3, 12>::Zero();
    double v2[6], v1[3];
    Vec2 g2r[6], g1r[3], g[6];
    for (size_t i = 0; i < q.points.size(); ++i) {
      p2_ref(q.ref_points[i], v2, g2r);
      p1_ref(q.ref_points[i], v1, g1r);
      for (int k = 0; k < 6; ++k) g[k] = q.grad_transform[i] * g2r[k];
      for (int m3 = 0; m3 < 3; ++m3)
        for (int k = 0; k < 6; ++k)
          for (int c = 0; c < 2; ++c)
            loc(m3, 2 * k + c) -= q.weights[i] * v1[m3] * g[k][c];
    }
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 12; ++b)
        if (loc(a, b) != 0.0) trip.emplace_back(pdof[a], vdof[b], loc(a, b));
  });
  // Interface part: ({{q n}}, [[u]]).
  for_each_interface(d, [&](int e, const MappedQuadrature& q, const double* kappa, double) {
    double v2[6], v1[3];
    Vec2 g2r[6], g1r[3];
    for (size_t i = 0; i < q.points.size(); ++i) {
      p2_ref(q.ref_points[i], v2, g2r);
      p1_ref(q.ref_points[i], v1, g1r);
      const Vec2& n = q.normals[i];
      for (int r = 0; r < 2; ++r) {
        if (kappa[r] == 0.0) continue;
        for (int m3 = 0; m3 < 3; ++m3) {
          const int pdof = L.pres_dof(L.pres_instance(e, r, m3));
          for (int s = 0; s < 2; ++s) {
            const double sign = s == 0 ? 1.0 : -1.0;
            for (int k = 0; k < 6; ++k) {
              const int vinst = L.vel_instance(e, s, k);
              for (int c = 0; c < 2; ++c)
                trip.emplace_back(pdof, L.vel_dof(vinst, c),
                                  q.weights[i] * kappa[r] * v1[m3] * n[c] * sign * v2[k]);
            }
          }
        }
      }
    }
  });
  return from_triplets(trip, L.n_total());
}

SpMat assemble_nitsche(const Discretization& d) {
  require(d.params.lambda_nitsche > 0.0, ErrorCode::invalid_argument,
          "Nitsche parameter lambda must be positive");
  const DofLayout& L = *d.layout;
  const double* mu = d.params.mu;
  Triplets trip;
  for_each_interface(d, [&](int e, const MappedQuadrature& q, const double* kappa,
                            double h) {
    const double mu_avg = kappa[0] * mu[0] + kappa[1] * mu[1];
    const double pen = d.params.lambda_nitsche * mu_avg / h;
    int dof[24];  // (phase s, node k, comp c) -> 12 s + 2 k + c
    for (int s = 0; s < 2; ++s)
      for (int k = 0; k < 6; ++k) {
        const int inst = L.vel_instance(e, s, k);
        dof[12 * s + 2 * k] = L.vel_dof(inst, 0);
        dof[12 * s + 2 * k + 1] = L.vel_dof(inst, 1);
      }
    Eigen::Matrix<double, 24, 24> loc = Eigen::Matrix<double, 24, 24>::Zero();
    double val[6];
    Vec2 gref[6], g[6];
    const double sign[2] = {1.0, -1.0};
    for (size_t i = 0; i < q.points.size(); ++i) {
      p2_ref(q.ref_points[i], val, gref);
      for (int k = 0; k < 6; ++k) g[k] = q.grad_transform[i] * gref[k];
      const Vec2& n = q.normals[i];
      const double w = q.weights[i];
      for (int s = 0; s < 2; ++s)
        for (int k = 0; k < 6; ++k)
          for (int c = 0; c < 2; ++c) {
            const int a = 12 * s + 2 * k + c;
            for (int r = 0; r < 2; ++r)
              for (int l = 0; l < 6; ++l)
                for (int d2 = 0; d2 < 2; ++d2) {
                  const int b = 12 * r + 2 * l + d2;
                  // stress of the trial function against the test jump
                  double t = kappa[s] * (-mu[s]) *
                             ((c == d2 ? g[k].dot(n) : 0.0) + n[c] * g[k][d2]) *
                             val[l] * sign[r];
                  // stress of the test function against the trial jump
                  t += kappa[r] * (-mu[r]) *
                       ((c == d2 ? g[l].dot(n) : 0.0) + n[d2] * g[l][c]) *
                       val[k] * sign[s];
                  if (c == d2) t += pen * sign[s] * sign[r] * val[k] * val[l];
                  loc(a, b) += w * t;
                }
          }
    }
    for (int a = 0; a < 24; ++a)
      for (int b = 0; b < 24; ++b)
        if (loc(a, b) != 0.0) trip.emplace_back(dof[a], dof[b], loc(a, b));
  });
  return from_triplets(trip, L.n_total());
}

SpMat assemble_ghost_penalty(const Discretization& d) {
  require(d.params.gamma_ghost >= 0.0, ErrorCode::invalid_argument,
          "ghost penalty gamma must be non-negative");
  const DofLayout& L = *d.layout;
  const Mesh& m = *d.mesh;
  Triplets trip;
  if (d.params.gamma_ghost == 0.0) return from_triplets(trip, L.n_total());
  for (int phase = 0; phase < 2; ++phase) {
    const double coef_phase = d.params.gamma_ghost / d.params.mu[phase];
    for (int fi : d.topo->ghost_faces[phase]) {
      const Face& f = m.faces[fi];
      const Vec2 dv = m.vertices[f.v[1]] - m.vertices[f.v[0]];
      const double len = dv.norm();
      const Vec2 nf = Vec2(-dv.y(), dv.x()) / len;
      const double coef = coef_phase * f.h_f * f.h_f * f.h_f * len;
      // Jump functional of the normal derivative across the face: P1
      // gradients are constant per element.
      double jump_coef[6];
      int dof[6];
      for (int side = 0; side < 2; ++side) {
        const int e = f.elem[side];
        const Mat2 inv_jt = m.jacobian(e).inverse().transpose();
        double v1[3];
        Vec2 g1[3];
        p1_ref(Vec2::Zero(), v1, g1);
        for (int lv = 0; lv < 3; ++lv) {
          const Vec2 g = inv_jt * g1[lv];
          jump_coef[3 * side + lv] = (side == 0 ? 1.0 : -1.0) * g.dot(nf);
          dof[3 * side + lv] = L.pres_dof(L.pres_instance(e, phase, lv));
        }
      }
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
          trip.emplace_back(dof[a], dof[b], coef * jump_coef[a] * jump_coef[b]);
    }
  }
  return from_triplets(trip, L.n_total());
}

Eigen::VectorXd assemble_rhs(const Discretization& d, const Problem& prob) {
  const DofLayout& L = *d.layout;
  Eigen::VectorXd r = Eigen::VectorXd::Zero(L.n_total());
  for_each_volume(d, [&](int e, int phase, const MappedQuadrature& q) {
    const double rho = d.params.rho[phase];
    double val[6];
    Vec2 gref[6];
    for (size_t i = 0; i < q.points.size(); ++i) {
      p2_ref(q.ref_points[i], val, gref);
      const Vec2 g = prob.body_force[phase](q.points[i]);
      const double w = rho * q.weights[i];
      for (int k = 0; k < 6; ++k) {
        const int inst = L.vel_instance(e, phase, k);
        r[L.vel_dof(inst, 0)] += w * g.x() * val[k];
        r[L.vel_dof(inst, 1)] += w * g.y() * val[k];
      }
    }
  });
  for_each_interface(d, [&](int e, const MappedQuadrature& q, const double* kappa, double) {
    // (f, kappa_1 v|_{Omega_2} + kappa_2 v|_{Omega_1}): the phase-0 trace is
    // weighted by kappa_2 and vice versa.
    const double wgt[2] = {kappa[1], kappa[0]};
    double val[6];
    Vec2 gref[6];
    for (size_t i = 0; i < q.points.size(); ++i) {
      p2_ref(q.ref_points[i], val, gref);
      const Vec2 fval = prob.surface_force(q.points[i], q.normals[i]);
      for (int s = 0; s < 2; ++s) {
        if (wgt[s] == 0.0) continue;
        const double w = wgt[s] * q.weights[i];
        for (int k = 0; k < 6; ++k) {
          const int inst = L.vel_instance(e, s, k);
          r[L.vel_dof(inst, 0)] += w * fval.x() * val[k];
          r[L.vel_dof(inst, 1)] += w * fval.y() * val[k];
        }
      }
    }
  });
  return r;
}

Eigen::VectorXd assemble_mean_constraint(const Discretization& d) {
  const DofLayout& L = *d.layout;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(L.n_total());
  for_each_volume(d, [&](int e, int phase, const MappedQuadrature& q) {
    double v1[3];
    Vec2 g1[3];
    for (size_t i = 0; i < q.points.size(); ++i) {
      p1_ref(q.ref_points[i], v1, g1);
      for (int m3 = 0; m3 < 3; ++m3)
        c[L.pres_dof(L.pres_instance(e, phase, m3))] += q.weights[i] * v1[m3];
    }
  });
  return c;
}

SpMat assemble_raw(const Discretization& d) {
  const SpMat a = assemble_viscosity(d) + assemble_nitsche(d);
  const SpMat b = assemble_divergence(d);
  const SpMat j = assemble_ghost_penalty(d);
  return a + SpMat(b.transpose()) + b - j;
}

SystemAssembly assemble_system(const Discretization& d, const Problem& prob) {
  const DofLayout& L = *d.layout;
  const int n = L.n_total();
  const SpMat raw = assemble_raw(d);
  const Eigen::VectorXd c = assemble_mean_constraint(d);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs.head(n) = assemble_rhs(d, prob);

  // Strong Dirichlet values at boundary P2 nodes (never displaced: the
  // interface may not touch the outer boundary).
  std::vector<char> is_bc(n + 1, 0);
  std::vector<double> bc_val(n, 0.0);
  for (int node : L.boundary_nodes) {
    const Vec2 u = prob.dirichlet(d.mesh->p2_node_position(node));
    for (int s = 0; s < 2; ++s) {
      const int inst = L.vel_inst[s][node];
      if (inst < 0) continue;
      for (int comp = 0; comp < 2; ++comp) {
        const int dof = L.vel_dof(inst, comp);
        is_bc[dof] = 1;
        bc_val[dof] = comp == 0 ? u.x() : u.y();
      }
    }
  }

  Triplets trip;
  trip.reserve(static_cast<size_t>(raw.nonZeros()) + 2 * n + n);
  auto push = [&](int row, int col, double v) {
    if (v == 0.0) return;
    if (is_bc[row]) return;  // identity rows added below
    if (is_bc[col]) {
      rhs[row] -= v * bc_val[col];
      return;
    }
    trip.emplace_back(row, col, v);
  };
  for (int k = 0; k < raw.outerSize(); ++k)
    for (SpMat::InnerIterator it(raw, k); it; ++it) push(it.row(), it.col(), it.value());
  for (int i = 0; i < n; ++i)
    if (c[i] != 0.0) {
      push(n, i, c[i]);
      push(i, n, c[i]);
    }
  for (int i = 0; i < n; ++i)
    if (is_bc[i]) {
      trip.emplace_back(i, i, 1.0);
      rhs[i] = bc_val[i];
    }

  SystemAssembly sys;
  sys.matrix = from_triplets(trip, n + 1);
  sys.rhs = std::move(rhs);
  sys.constraint = c;
  sys.layout = &L;
  sys.n_unknowns = n + 1;
  return sys;
}

double triple_norm_squared(const Discretization& d, const Eigen::VectorXd& x) {
  const DofLayout& L = *d.layout;
  const SpMat a = assemble_viscosity(d) + assemble_nitsche(d);
  const SpMat j = assemble_ghost_penalty(d);
  double t = x.dot(a * x) + x.dot(j * x);
  // Extended-domain pressure mass: the phase-i copy integrated over the full
  // elements of Omega_i^+ (undeformed geometry; diagnostic only).
  for (int phase = 0; phase < 2; ++phase) {
    for (int e : d.topo->extended_elements[phase]) {
      const QuadratureRule rule = element_rule(*d.mesh, e, 2);
      for (size_t i = 0; i < rule.points.size(); ++i) {
        const Vec2 ref = d.mesh->to_reference(e, rule.points[i]);
        double v1[3];
        Vec2 g1[3];
        p1_ref(ref, v1, g1);
        double p = 0.0;
        for (int m3 = 0; m3 < 3; ++m3)
          p += x[L.pres_dof(L.pres_instance(e, phase, m3))] * v1[m3];
        t += rule.weights[i] * p * p / d.params.mu[phase];
      }
    }
  }
  return t;
}

}  // namespace cutstokes
