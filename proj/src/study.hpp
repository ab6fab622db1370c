// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"
#include "solve.hpp"

namespace cutstokes {

struct RunConfig {
  int levels = 4;
  bool enrich_velocity = true;
  bool isoparametric = true;
  double gamma = 0.1;
  double lambda = 20.0;
  int structured_n = 8;
  std::string mesh_file;  // used instead of the structured mesh when set
  std::string problem = "kirchhart-circle";
  double center_x = 0.0, center_y = 0.0;
  int quad_degree = 0;  // 0: automatic (4, or 6 with the mapping active)
  bool serial = true;   // accepted for interface stability; runs are serial
};

struct LevelRow {
  int level = 0;
  long long ndof = 0;
  double e_up = 0.0;
  double e_u_l2 = 0.0;
  std::optional<double> eoc_up;
  std::optional<double> eoc_u_l2;
  double residual = 0.0;
  double seconds = 0.0;
};

// Owning bundle of one refinement level's discretization stack.
struct Level {
  Mesh mesh;
  LevelSet levelset;
  NodalLevelSet nodal;
  CutTopology topo;
  MeshDeformation deformation;
  DofLayout layout;
  MaterialParams params;
  int volume_degree = 4;
  int interface_degree = 9;

  Discretization disc() const;
};

// Builds the full stack for one mesh. `quad_degree` 0 selects the automatic
// volume degree. The Level is heap-allocated so internal pointers stay valid.
std::unique_ptr<Level> make_level(Mesh mesh, const Problem& prob, bool enrich_velocity,
                                  bool isoparametric, const MaterialParams& params,
                                  int quad_degree = 0);

// Refinement study: one row per level. Any stage failure is rethrown with
// the level and stage name attached.
std::vector<LevelRow> run_study(const RunConfig& cfg);

std::string to_csv(const std::vector<LevelRow>& rows);

}  // namespace cutstokes
