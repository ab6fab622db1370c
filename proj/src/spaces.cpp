// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0

#include "spaces.hpp"

#include <algorithm>

namespace cutstokes {

void p2_ref(const Vec2& ref, double val[6], Vec2 grad[6]) {
  const double xi = ref.x(), eta = ref.y();
  const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
  const Vec2 g0(-1.0, -1.0), g1(1.0, 0.0), g2(0.0, 1.0);
  val[0] = l0 * (2.0 * l0 - 1.0);
  val[1] = l1 * (2.0 * l1 - 1.0);
  val[2] = l2 * (2.0 * l2 - 1.0);
  val[3] = 4.0 * l0 * l1;
  val[4] = 4.0 * l1 * l2;
  val[5] = 4.0 * l2 * l0;
  grad[0] = (4.0 * l0 - 1.0) * g0;
  grad[1] = (4.0 * l1 - 1.0) * g1;
  grad[2] = (4.0 * l2 - 1.0) * g2;
  grad[3] = 4.0 * (l0 * g1 + l1 * g0);
  grad[4] = 4.0 * (l1 * g2 + l2 * g1);
  grad[5] = 4.0 * (l2 * g0 + l0 * g2);
}

void p1_ref(const Vec2& ref, double val[3], Vec2 grad[3]) {
  val[0] = 1.0 - ref.x() - ref.y();
  val[1] = ref.x();
  val[2] = ref.y();
  grad[0] = Vec2(-1.0, -1.0);
  grad[1] = Vec2(1.0, 0.0);
  grad[2] = Vec2(0.0, 1.0);
}

int DofLayout::vel_instance(int e, int phase, int local) const {
  const int inst = vel_inst[phase][mesh->p2_node(e, local)];
  require(inst >= 0, ErrorCode::invalid_argument,
          "element " + std::to_string(e) + " lies outside the extended domain of phase " +
              std::to_string(phase + 1));
  return inst;
}

int DofLayout::pres_instance(int e, int phase, int local_vertex) const {
  const int inst = pres_inst[phase][mesh->elements[e][local_vertex]];
  require(inst >= 0, ErrorCode::invalid_argument,
          "element " + std::to_string(e) + " lies outside the extended domain of phase " +
              std::to_string(phase + 1));
  return inst;
}

DofLayout build_layout(const Mesh& m, const CutTopology& ct, bool enrich_velocity) {
  DofLayout L;
  L.mesh = &m;
  L.enrich_velocity = enrich_velocity;
  const int nn = m.num_p2_nodes();
  const int nv = m.num_vertices();

  std::vector<char> meets[2] = {std::vector<char>(nn, 0), std::vector<char>(nn, 0)};
  std::vector<char> support_cut(nn, 0);
  for (int e = 0; e < m.num_elements(); ++e) {
    const ElementClass cls = ct.element_class[e];
    for (int k = 0; k < 6; ++k) {
      const int node = m.p2_node(e, k);
      if (cls == ElementClass::cut) {
        meets[0][node] = meets[1][node] = 1;
        support_cut[node] = 1;
      } else {
        meets[static_cast<int>(cls)][node] = 1;
      }
    }
  }

  L.vel_inst[0].assign(nn, -1);
  L.vel_inst[1].assign(nn, -1);
  int extra = nn;
  for (int node = 0; node < nn; ++node) {
    if (!enrich_velocity) {
      L.vel_inst[0][node] = L.vel_inst[1][node] = node;
      continue;
    }
    if (support_cut[node]) {
      L.vel_inst[0][node] = node;
      L.vel_inst[1][node] = extra++;
    } else {
      if (meets[0][node]) L.vel_inst[0][node] = node;
      if (meets[1][node]) L.vel_inst[1][node] = node;
    }
  }
  L.n_vel_scalar = extra;

  // Pressure instances over vertices; always phase-doubled on cut supports.
  L.pres_inst[0].assign(nv, -1);
  L.pres_inst[1].assign(nv, -1);
  int pres_extra = nv;
  for (int vtx = 0; vtx < nv; ++vtx) {
    if (support_cut[vtx]) {
      L.pres_inst[0][vtx] = vtx;
      L.pres_inst[1][vtx] = pres_extra++;
    } else {
      if (meets[0][vtx]) L.pres_inst[0][vtx] = vtx;
      if (meets[1][vtx]) L.pres_inst[1][vtx] = vtx;
    }
  }
  L.n_pres = pres_extra;

  // Boundary P2 nodes: endpoints and midpoints of boundary faces.
  std::vector<char> on_boundary(nn, 0);
  for (int f = 0; f < m.num_faces(); ++f)
    if (m.faces[f].boundary) {
      on_boundary[m.faces[f].v[0]] = 1;
      on_boundary[m.faces[f].v[1]] = 1;
      on_boundary[nv + f] = 1;
    }
  for (int node = 0; node < nn; ++node) {
    if (!on_boundary[node]) continue;
    L.boundary_nodes.push_back(node);
    int insts[2] = {L.vel_inst[0][node], L.vel_inst[1][node]};
    for (int s = 0; s < 2; ++s) {
      if (insts[s] < 0) continue;
      if (s == 1 && insts[1] == insts[0]) continue;
      L.boundary_vel_dofs.push_back(L.vel_dof(insts[s], 0));
      L.boundary_vel_dofs.push_back(L.vel_dof(insts[s], 1));
    }
  }
  std::sort(L.boundary_vel_dofs.begin(), L.boundary_vel_dofs.end());
  return L;
}

VelSample eval_velocity(const DofLayout& L, const Eigen::VectorXd& coeffs, int e,
                        int phase, const Vec2& ref, const Mat2& grad_transform) {
  double val[6];
  Vec2 grad[6];
  p2_ref(ref, val, grad);
  VelSample s;
  s.value.setZero();
  s.grad.setZero();
  for (int k = 0; k < 6; ++k) {
    const int inst = L.vel_instance(e, phase, k);
    const Vec2 g = grad_transform * grad[k];
    for (int c = 0; c < 2; ++c) {
      const double ck = coeffs[L.vel_dof(inst, c)];
      s.value[c] += ck * val[k];
      s.grad.row(c) += ck * g.transpose();
    }
  }
  return s;
}

PresSample eval_pressure(const DofLayout& L, const Eigen::VectorXd& coeffs, int e,
                         int phase, const Vec2& ref, const Mat2& grad_transform) {
  double val[3];
  Vec2 grad[3];
  p1_ref(ref, val, grad);
  PresSample s;
  s.value = 0.0;
  s.grad.setZero();
  for (int k = 0; k < 3; ++k) {
    const double ck = coeffs[L.pres_dof(L.pres_instance(e, phase, k))];
    s.value += ck * val[k];
    s.grad += ck * (grad_transform * grad[k]);
  }
  return s;
}

Eigen::VectorXd interpolate_fields(const DofLayout& L,
                                   const std::vector<Vec2>& p2_positions,
                                   const FieldSet& fields,
                                   const std::function<int(const Vec2&)>& side_of) {
  const Mesh& m = *L.mesh;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(L.n_total());
  for (int node = 0; node < m.num_p2_nodes(); ++node) {
    const Vec2& pos = p2_positions[node];
    const int i0 = L.vel_inst[0][node], i1 = L.vel_inst[1][node];
    if (i0 >= 0 && i0 == i1) {
      const Vec2 u = fields.velocity[side_of(pos)](pos);
      x[L.vel_dof(i0, 0)] = u.x();
      x[L.vel_dof(i0, 1)] = u.y();
    } else {
      for (int s = 0; s < 2; ++s) {
        const int inst = L.vel_inst[s][node];
        if (inst < 0) continue;
        const Vec2 u = fields.velocity[s](pos);
        x[L.vel_dof(inst, 0)] = u.x();
        x[L.vel_dof(inst, 1)] = u.y();
      }
    }
  }
  for (int vtx = 0; vtx < m.num_vertices(); ++vtx) {
    const Vec2& pos = p2_positions[vtx];
    for (int s = 0; s < 2; ++s) {
      const int inst = L.pres_inst[s][vtx];
      if (inst < 0) continue;
      if (s == 1 && inst == L.pres_inst[0][vtx]) continue;
      x[L.pres_dof(inst)] = fields.pressure[s](pos);
    }
  }
  return x;
}

}  // namespace cutstokes
