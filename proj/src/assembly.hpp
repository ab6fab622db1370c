// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/SparseCore>

#include "deformation.hpp"
#include "problem.hpp"

namespace cutstokes {

using SpMat = Eigen::SparseMatrix<double>;

struct MaterialParams {
  double mu[2] = {1.0, 1.0};
  double rho[2] = {1.0, 1.0};
  double lambda_nitsche = 20.0;
  double gamma_ghost = 0.1;
};

// Everything fixed for one refinement level. Non-owning.
struct Discretization {
  const Mesh* mesh = nullptr;
  const LevelSet* levelset = nullptr;
  const NodalLevelSet* nodal = nullptr;
  const CutTopology* topo = nullptr;
  const MeshDeformation* deformation = nullptr;
  const DofLayout* layout = nullptr;
  MaterialParams params;
  int volume_degree = 4;
  int interface_degree = 9;
};

// Blocks are returned as n_total x n_total matrices (or n_total vectors)
// with entries confined to their natural sub-blocks, so they can be summed
// and tested in isolation.
//
// Viscosity: a(u,v) = 1/2 sum_i mu_i (D(u), D(v))_{Omega_i}, D = grad + grad^T.
SpMat assemble_viscosity(const Discretization& d);

// Divergence coupling b(u,q) = -sum_i (div u, q)_{Omega_i} + ({{q n}}, [[u]])_G,
// stored with pressure rows and velocity columns.
SpMat assemble_divergence(const Discretization& d);

// Velocity-velocity interface terms of N: both consistency terms with the
// viscous stress plus the (lambda/h){{mu}} penalty.
SpMat assemble_nitsche(const Discretization& d);

// Ghost penalty J(p,q) = gamma sum_i sum_{F in F_i} mu_i^{-1} h_F^3
// ([[dn E_i p]],[[dn E_i q]])_F, returned positive semidefinite (the system
// subtracts it). Computed on the undeformed mesh.
SpMat assemble_ghost_penalty(const Discretization& d);

// rho_i (g, v)_{Omega_i} + (f, kappa_1 v|_{Omega_2} + kappa_2 v|_{Omega_1})_G.
Eigen::VectorXd assemble_rhs(const Discretization& d, const Problem& prob);

// Vector of pressure basis integrals over the (mapped) domain; c . p = int p.
Eigen::VectorXd assemble_mean_constraint(const Discretization& d);

// Full bilinear form k = [[A, B^T],[B, -J]] without constraint or boundary
// conditions; A = viscosity + Nitsche.
SpMat assemble_raw(const Discretization& d);

struct SystemAssembly {
  SpMat matrix;                // (n+1) x (n+1), symmetric, Dirichlet applied
  Eigen::VectorXd rhs;         // length n+1
  Eigen::VectorXd constraint;  // length n, pressure mass vector
  const DofLayout* layout = nullptr;
  int n_unknowns = 0;
};

// Saddle system with the zero-mean pressure constraint appended and velocity
// Dirichlet data imposed strongly by symmetric elimination.
SystemAssembly assemble_system(const Discretization& d, const Problem& prob);

// Diagnostic norm |||(u,p)|||^2 = A(u,u) + sum_i ||mu_i^{-1/2} E_i p||^2_{Omega_i^+}
// + J(p,p) for a raw coefficient vector.
double triple_norm_squared(const Discretization& d, const Eigen::VectorXd& x);

}  // namespace cutstokes
