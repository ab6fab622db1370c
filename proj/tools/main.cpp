// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver for refinement studies of the two-phase Stokes
// interface benchmark. Talks to the solver exclusively through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cutstokes/cutstokes.h"

namespace {

int fail_with(const char* stage) {
  std::cerr << "error (" << stage << "): " << cts_last_error() << "\n";
  return 1;
}

bool parse_on_off(const std::string& v, bool& out) {
  if (v == "on") {
    out = true;
    return true;
  }
  if (v == "off") {
    out = false;
    return true;
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cutstokes: unfitted finite element solver for the two-phase Stokes\n"
      "interface problem (XFEM enrichment, Nitsche coupling, ghost penalty,\n"
      "isoparametric interface geometry). Runs a uniform refinement study\n"
      "and prints a CSV table of errors and convergence orders."};

  int levels = 4;
  std::string enrich = "on";
  std::string iso = "on";
  double gamma = 0.1;
  double lambda = 20.0;
  std::string mesh = "structured:8";
  std::string problem = "kirchhart-circle";
  std::string out_path;
  std::string center = "0,0";
  int quad_degree = 0;
  bool serial = false;

  app.add_option("--levels", levels, "Finest refinement level L (runs L+1 levels)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--enrich-velocity", enrich,
                 "Doubled velocity DOFs on cut elements: on|off")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--isoparametric", iso, "High-order interface mapping: on|off")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--gamma", gamma, "Ghost-penalty parameter (>= 0)");
  app.add_option("--lambda", lambda, "Nitsche penalty parameter (> 0)");
  app.add_option("--mesh", mesh, "Start mesh: structured:N or file:PATH");
  app.add_option("--problem", problem, "Manufactured problem name");
  app.add_option("--out", out_path, "Write the CSV table to this file");
  app.add_option("--quad-degree", quad_degree,
                 "Volume quadrature degree override (0 = automatic)");
  app.add_option("--center", center, "Interface center as X,Y");
  app.add_flag("--serial", serial, "Run strictly serially (the default)");

  CLI11_PARSE(app, argc, argv);

  bool enrich_on = true, iso_on = true;
  if (!parse_on_off(enrich, enrich_on) || !parse_on_off(iso, iso_on)) {
    std::cerr << "error: --enrich-velocity/--isoparametric take on|off\n";
    return 2;
  }
  double cx = 0.0, cy = 0.0;
  if (std::sscanf(center.c_str(), "%lf,%lf", &cx, &cy) != 2) {
    std::cerr << "error: --center takes X,Y\n";
    return 2;
  }

  cts_study* study = nullptr;
  if (cts_study_create(&study) != CTS_OK) return fail_with("setup");
  struct Guard {
    cts_study* s;
    ~Guard() { cts_study_destroy(s); }
  } guard{study};

  if (cts_study_set_levels(study, levels) != CTS_OK ||
      cts_study_set_enrich_velocity(study, enrich_on) != CTS_OK ||
      cts_study_set_isoparametric(study, iso_on) != CTS_OK ||
      cts_study_set_gamma(study, gamma) != CTS_OK ||
      cts_study_set_lambda(study, lambda) != CTS_OK ||
      cts_study_set_quad_degree(study, quad_degree) != CTS_OK ||
      cts_study_set_problem(study, problem.c_str()) != CTS_OK ||
      cts_study_set_interface_center(study, cx, cy) != CTS_OK ||
      cts_study_set_serial(study, serial) != CTS_OK)
    return fail_with("setup");

  if (mesh.rfind("structured:", 0) == 0) {
    const int n = std::atoi(mesh.c_str() + 11);
    if (cts_study_set_mesh_structured(study, n) != CTS_OK) return fail_with("setup");
  } else if (mesh.rfind("file:", 0) == 0) {
    if (cts_study_set_mesh_file(study, mesh.c_str() + 5) != CTS_OK)
      return fail_with("setup");
  } else {
    std::cerr << "error: --mesh takes structured:N or file:PATH\n";
    return 2;
  }

  if (cts_study_run(study) != CTS_OK) return fail_with("run");

  const char* csv = nullptr;
  if (cts_study_csv(study, &csv) != CTS_OK) return fail_with("output");
  std::cout << csv;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out.good()) {
      std::cerr << "error: cannot open " << out_path << " for writing\n";
      return 1;
    }
    out << csv;
    if (!out.good()) {
      std::cerr << "error: write to " << out_path << " failed\n";
      return 1;
    }
  }
  return 0;
}
