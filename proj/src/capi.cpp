// Copyright (c) the cutstokes developers.
// SPDX-License-Identifier: Apache-2.0

#include "cutstokes/cutstokes.h"

#include <cmath>
#include <limits>
#include <string>

#include "study.hpp"

namespace {

thread_local std::string g_last_error = "no error";

cts_status to_status(cutstokes::ErrorCode code) {
  using cutstokes::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument:
      return CTS_INVALID_ARGUMENT;
    case ErrorCode::io:
      return CTS_IO_ERROR;
    case ErrorCode::geometry:
      return CTS_GEOMETRY_ERROR;
    case ErrorCode::singular_system:
      return CTS_SINGULAR_SYSTEM;
    case ErrorCode::internal:
      return CTS_INTERNAL_ERROR;
  }
  return CTS_INTERNAL_ERROR;
}

// Runs the body, converting exceptions to status codes.
template <typename F>
cts_status guarded(F&& body) {
  try {
    return body();
  } catch (const cutstokes::Error& err) {
    g_last_error = err.what();
    return to_status(err.code());
  } catch (const std::exception& ex) {
    g_last_error = ex.what();
    return CTS_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return CTS_INTERNAL_ERROR;
  }
}

cts_status invalid(const char* msg) {
  g_last_error = msg;
  return CTS_INVALID_ARGUMENT;
}

}  // namespace

struct cts_mesh {
  cutstokes::Mesh mesh;
};

struct cts_study {
  cutstokes::RunConfig config;
  std::vector<cutstokes::LevelRow> rows;
  std::string csv;
  bool finished = false;
};

extern "C" {

const char* cts_last_error(void) { return g_last_error.c_str(); }

cts_status cts_mesh_create_structured(int n, cts_mesh** out) {
  if (!out) return invalid("null output pointer");
  return guarded([&] {
    *out = new cts_mesh{cutstokes::build_structured(n)};
    return CTS_OK;
  });
}

cts_status cts_mesh_read(const char* path, cts_mesh** out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&] {
    *out = new cts_mesh{cutstokes::read_mesh(path)};
    return CTS_OK;
  });
}

cts_status cts_mesh_write(const cts_mesh* mesh, const char* path) {
  if (!mesh || !path) return invalid("null argument");
  return guarded([&] {
    cutstokes::write_mesh(mesh->mesh, path);
    return CTS_OK;
  });
}

cts_status cts_mesh_refine(const cts_mesh* mesh, cts_mesh** out) {
  if (!mesh || !out) return invalid("null argument");
  return guarded([&] {
    *out = new cts_mesh{cutstokes::refine_uniform(mesh->mesh)};
    return CTS_OK;
  });
}

cts_status cts_mesh_num_vertices(const cts_mesh* mesh, int* out) {
  if (!mesh || !out) return invalid("null argument");
  *out = mesh->mesh.num_vertices();
  return CTS_OK;
}

cts_status cts_mesh_num_elements(const cts_mesh* mesh, int* out) {
  if (!mesh || !out) return invalid("null argument");
  *out = mesh->mesh.num_elements();
  return CTS_OK;
}

cts_status cts_mesh_max_diameter(const cts_mesh* mesh, double* out) {
  if (!mesh || !out) return invalid("null argument");
  *out = mesh->mesh.max_diameter();
  return CTS_OK;
}

void cts_mesh_destroy(cts_mesh* mesh) { delete mesh; }

cts_status cts_study_create(cts_study** out) {
  if (!out) return invalid("null output pointer");
  return guarded([&] {
    *out = new cts_study();
    return CTS_OK;
  });
}

void cts_study_destroy(cts_study* study) { delete study; }

cts_status cts_study_set_levels(cts_study* s, int levels) {
  if (!s) return invalid("null study");
  if (levels < 0) return invalid("levels must be >= 0");
  s->config.levels = levels;
  return CTS_OK;
}

cts_status cts_study_set_enrich_velocity(cts_study* s, int on) {
  if (!s) return invalid("null study");
  s->config.enrich_velocity = on != 0;
  return CTS_OK;
}

cts_status cts_study_set_isoparametric(cts_study* s, int on) {
  if (!s) return invalid("null study");
  s->config.isoparametric = on != 0;
  return CTS_OK;
}

cts_status cts_study_set_gamma(cts_study* s, double gamma) {
  if (!s) return invalid("null study");
  if (!(gamma >= 0.0)) return invalid("gamma must be >= 0");
  s->config.gamma = gamma;
  return CTS_OK;
}

cts_status cts_study_set_lambda(cts_study* s, double lambda) {
  if (!s) return invalid("null study");
  if (!(lambda > 0.0)) return invalid("lambda must be > 0");
  s->config.lambda = lambda;
  return CTS_OK;
}

cts_status cts_study_set_quad_degree(cts_study* s, int degree) {
  if (!s) return invalid("null study");
  if (degree != 0 && (degree < 1 || degree > 9))
    return invalid("quadrature degree must be 0 (auto) or in 1..9");
  s->config.quad_degree = degree;
  return CTS_OK;
}

cts_status cts_study_set_problem(cts_study* s, const char* name) {
  if (!s || !name) return invalid("null argument");
  return guarded([&] {
    cutstokes::make_problem(name);  // validates the name
    s->config.problem = name;
    return CTS_OK;
  });
}

cts_status cts_study_set_interface_center(cts_study* s, double x, double y) {
  if (!s) return invalid("null study");
  s->config.center_x = x;
  s->config.center_y = y;
  return CTS_OK;
}

cts_status cts_study_set_mesh_structured(cts_study* s, int n) {
  if (!s) return invalid("null study");
  if (n < 1) return invalid("structured mesh needs n >= 1");
  s->config.structured_n = n;
  s->config.mesh_file.clear();
  return CTS_OK;
}

cts_status cts_study_set_mesh_file(cts_study* s, const char* path) {
  if (!s || !path) return invalid("null argument");
  s->config.mesh_file = path;
  return CTS_OK;
}

cts_status cts_study_set_serial(cts_study* s, int on) {
  if (!s) return invalid("null study");
  s->config.serial = on != 0;
  return CTS_OK;
}

cts_status cts_study_run(cts_study* s) {
  if (!s) return invalid("null study");
  return guarded([&] {
    s->finished = false;
    s->rows = cutstokes::run_study(s->config);
    s->csv = cutstokes::to_csv(s->rows);
    s->finished = true;
    return CTS_OK;
  });
}

cts_status cts_study_row_count(const cts_study* s, int* out) {
  if (!s || !out) return invalid("null argument");
  if (!s->finished) return invalid("study has not been run");
  *out = static_cast<int>(s->rows.size());
  return CTS_OK;
}

cts_status cts_study_row(const cts_study* s, int index, cts_level_row* out) {
  if (!s || !out) return invalid("null argument");
  if (!s->finished) return invalid("study has not been run");
  if (index < 0 || index >= static_cast<int>(s->rows.size()))
    return invalid("row index out of range");
  const cutstokes::LevelRow& r = s->rows[index];
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out->level = r.level;
  out->ndof = r.ndof;
  out->e_up = r.e_up;
  out->eoc_up = r.eoc_up.value_or(nan);
  out->e_u_l2 = r.e_u_l2;
  out->eoc_u_l2 = r.eoc_u_l2.value_or(nan);
  out->residual = r.residual;
  out->seconds = r.seconds;
  return CTS_OK;
}

cts_status cts_study_csv(const cts_study* s, const char** out) {
  if (!s || !out) return invalid("null argument");
  if (!s->finished) return invalid("study has not been run");
  *out = s->csv.c_str();
  return CTS_OK;
}

}  // extern "C"
