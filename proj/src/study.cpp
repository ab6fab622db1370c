// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0

#include "study.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

namespace cutstokes {

Discretization Level::disc() const {
  Discretization d;
  d.mesh = &mesh;
  d.levelset = &levelset;
  d.nodal = &nodal;
  d.topo = &topo;
  d.deformation = &deformation;
  d.layout = &layout;
  d.params = params;
  d.volume_degree = volume_degree;
  d.interface_degree = interface_degree;
  return d;
}

std::unique_ptr<Level> make_level(Mesh mesh, const Problem& prob, bool enrich_velocity,
                                  bool isoparametric, const MaterialParams& params,
                                  int quad_degree) {
  require(quad_degree == 0 || (quad_degree >= 1 && quad_degree <= 9),
          ErrorCode::invalid_argument, "quadrature degree must be in 1..9");
  auto lvl = std::make_unique<Level>();
  lvl->mesh = std::move(mesh);
  lvl->levelset = prob.levelset;
  lvl->params = params;
  lvl->volume_degree = quad_degree > 0 ? quad_degree : (isoparametric ? 6 : 4);
  lvl->nodal = interpolate_p1(lvl->levelset, lvl->mesh);
  lvl->topo = classify(lvl->nodal, lvl->mesh);
  lvl->deformation = (isoparametric && lvl->topo.has_cuts())
                         ? build_deformation(lvl->mesh, lvl->levelset, lvl->nodal, lvl->topo)
                         : identity_deformation(lvl->mesh);
  lvl->layout = build_layout(lvl->mesh, lvl->topo, enrich_velocity);
  return lvl;
}

std::vector<LevelRow> run_study(const RunConfig& cfg) {
  require(cfg.levels >= 0, ErrorCode::invalid_argument, "levels must be >= 0");
  require(cfg.gamma >= 0.0, ErrorCode::invalid_argument, "gamma must be >= 0");
  require(cfg.lambda > 0.0, ErrorCode::invalid_argument, "lambda must be > 0");

  const Problem prob = make_problem(cfg.problem, Vec2(cfg.center_x, cfg.center_y));
  MaterialParams params;
  params.mu[0] = prob.mu[0];
  params.mu[1] = prob.mu[1];
  params.rho[0] = prob.rho[0];
  params.rho[1] = prob.rho[1];
  params.lambda_nitsche = cfg.lambda;
  params.gamma_ghost = cfg.gamma;

  auto staged = [](int level, const char* stage, auto&& fn) {
    try {
      return fn();
    } catch (const Error& err) {
      throw Error(err.code(), "level " + std::to_string(level) + ", stage " + stage +
                                  ": " + err.what());
    } catch (const std::exception& ex) {
      throw Error(ErrorCode::internal, "level " + std::to_string(level) + ", stage " +
                                           std::string(stage) + ": " + ex.what());
    }
  };

  Mesh current = staged(0, "mesh", [&] {
    return cfg.mesh_file.empty() ? build_structured(cfg.structured_n)
                                 : read_mesh(cfg.mesh_file);
  });
  std::vector<LevelRow> rows;
  std::vector<ErrorReport> reports;
  for (int level = 0; level <= cfg.levels; ++level) {
    const auto t0 = std::chrono::steady_clock::now();
    auto lvl = staged(level, "discretization", [&] {
      return make_level(current, prob, cfg.enrich_velocity, cfg.isoparametric, params,
                        cfg.quad_degree);
    });
    const SystemAssembly sys =
        staged(level, "assembly", [&] { return assemble_system(lvl->disc(), prob); });
    SolveReport solve_report;
    const Eigen::VectorXd x =
        staged(level, "solve", [&] { return factor_solve(sys, &solve_report); });
    ErrorReport err = staged(level, "error evaluation", [&] {
      return compute_errors(lvl->disc(), prob, x,
                            std::max(6, lvl->volume_degree));
    });
    err.level = level;
    reports.push_back(err);

    LevelRow row;
    row.level = level;
    row.ndof = err.ndof;
    row.e_up = err.e_up;
    row.e_u_l2 = err.e_u_l2;
    row.residual = solve_report.relative_residual;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rows.push_back(row);

    if (level < cfg.levels)
      current = staged(level, "refinement", [&] { return refine_uniform(current); });
  }

  attach_eoc(reports);
  for (size_t i = 0; i < rows.size(); ++i) {
    rows[i].eoc_up = reports[i].eoc_up;
    rows[i].eoc_u_l2 = reports[i].eoc_u_l2;
  }
  return rows;
}

std::string to_csv(const std::vector<LevelRow>& rows) {
  std::string out = "L,ndof,e_up,eoc_up,e_uL2,eoc_uL2,residual,seconds\n";
  char buf[256];
  for (const LevelRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%lld,%.6e,", r.level, r.ndof, r.e_up);
    out += buf;
    if (r.eoc_up) {
      std::snprintf(buf, sizeof buf, "%.2f", *r.eoc_up);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, ",%.6e,", r.e_u_l2);
    out += buf;
    if (r.eoc_u_l2) {
      std::snprintf(buf, sizeof buf, "%.2f", *r.eoc_u_l2);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, ",%.3e,%.3f\n", r.residual, r.seconds);
    out += buf;
  }
  return out;
}

}  // namespace cutstokes
