/* Copyright (c) the cutstokes developers.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the cutstokes solver: an unfitted finite element method for
 * the stationary two-phase Stokes interface problem with level-set geometry,
 * doubled degrees of freedom on cut elements, Nitsche interface coupling,
 * ghost-penalty pressure stabilization, and an optional isoparametric mesh
 * deformation for high-order interface geometry.
 *
 * All functions return CTS_OK on success; on failure they return an error
 * status and leave a human-readable message retrievable per thread via
 * cts_last_error(). Out parameters are untouched on failure.
 */
#ifndef CUTSTOKES_H
#define CUTSTOKES_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cts_status {
  CTS_OK = 0,
  CTS_INVALID_ARGUMENT = 1,
  CTS_IO_ERROR = 2,
  CTS_GEOMETRY_ERROR = 3,
  CTS_SINGULAR_SYSTEM = 4,
  CTS_INTERNAL_ERROR = 5
} cts_status;

/* Message describing the most recent failure on this thread. Never NULL. */
const char* cts_last_error(void);

/* ---------------------------------------------------------------- meshes */

typedef struct cts_mesh cts_mesh;

/* Criss-cross triangulation of [-1,1]^2 with 4 n^2 elements. */
cts_status cts_mesh_create_structured(int n, cts_mesh** out);

/* Plain-text mesh: line 1 "NV NE", NV lines "x y", NE lines "i j k"
 * (0-based, counter-clockwise). */
cts_status cts_mesh_read(const char* path, cts_mesh** out);
cts_status cts_mesh_write(const cts_mesh* mesh, const char* path);

/* Red refinement (every triangle into four). */
cts_status cts_mesh_refine(const cts_mesh* mesh, cts_mesh** out);

cts_status cts_mesh_num_vertices(const cts_mesh* mesh, int* out);
cts_status cts_mesh_num_elements(const cts_mesh* mesh, int* out);
cts_status cts_mesh_max_diameter(const cts_mesh* mesh, double* out);

void cts_mesh_destroy(cts_mesh* mesh);

/* --------------------------------------------------------------- studies */

typedef struct cts_study cts_study;

typedef struct cts_level_row {
  int level;
  long long ndof;
  double e_up;     /* pressure L2 error + broken velocity H1 error */
  double eoc_up;   /* NaN on the coarsest level */
  double e_u_l2;   /* velocity L2 error */
  double eoc_u_l2; /* NaN on the coarsest level */
  double residual; /* relative linear-solver residual */
  double seconds;  /* wall time of the level */
} cts_level_row;

/* A study runs a refinement sequence of the configured problem and records
 * one row per level. Defaults: levels 4, enrichment and mapping on,
 * gamma 0.1, lambda 20, structured n=8 start mesh, problem
 * "kirchhart-circle" centered at the origin. */
cts_status cts_study_create(cts_study** out);
void cts_study_destroy(cts_study* study);

cts_status cts_study_set_levels(cts_study* study, int levels);
cts_status cts_study_set_enrich_velocity(cts_study* study, int on);
cts_status cts_study_set_isoparametric(cts_study* study, int on);
cts_status cts_study_set_gamma(cts_study* study, double gamma);
cts_status cts_study_set_lambda(cts_study* study, double lambda);
cts_status cts_study_set_quad_degree(cts_study* study, int degree); /* 0: auto */
cts_status cts_study_set_problem(cts_study* study, const char* name);
cts_status cts_study_set_interface_center(cts_study* study, double x, double y);
cts_status cts_study_set_mesh_structured(cts_study* study, int n);
cts_status cts_study_set_mesh_file(cts_study* study, const char* path);
cts_status cts_study_set_serial(cts_study* study, int on);

cts_status cts_study_run(cts_study* study);

cts_status cts_study_row_count(const cts_study* study, int* out);
cts_status cts_study_row(const cts_study* study, int index, cts_level_row* out);

/* CSV table of the finished study (header plus one line per level). The
 * pointer stays valid until the study is destroyed or run again. */
cts_status cts_study_csv(const cts_study* study, const char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CUTSTOKES_H */
