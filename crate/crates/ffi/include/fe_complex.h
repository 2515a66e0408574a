#ifndef FE_COMPLEX_H
#define FE_COMPLEX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define FE_OK 0

#define FE_ERR_NULL 1

#define FE_ERR_PARSE 2

#define FE_ERR_INVALID 3

#define FE_ERR_SINGULAR 4

#define FE_ERR_MESH 5

#define FE_ERR_INTERNAL 6

/**
 * DoF table of one element on the reference simplex.
 */
typedef struct FeElement FeElement;

typedef struct FeMesh FeMesh;

/**
 * Message of the last failed call on this thread, or null. Valid until the next failing call.
 */
const char *fe_last_error_message(void);

/**
 * Builds the DoF table of `family` with shape degree `k`.
 *
 * # Safety
 *
 * `family` must be a nul-terminated string; `r` and `r2` nul-terminated or null;
 * `out` must be valid for writes.
 */
int32_t fe_element_new(const char *family,
                       uint32_t k,
                       const char *r,
                       const char *r2,
                       struct FeElement **out);

/**
 * # Safety
 *
 * `element` must come from `fe_element_new` and not be used afterwards; null is ignored.
 */
void fe_element_free(struct FeElement *element);

/**
 * # Safety
 *
 * `element` must be a live handle and `out` valid for writes.
 */
int32_t fe_element_dof_count(const struct FeElement *element, uintptr_t *out);

/**
 * # Safety
 *
 * `element` must be a live handle and `out` valid for writes.
 */
int32_t fe_element_shape_dim(const struct FeElement *element, uintptr_t *out);

/**
 * Writes 1 when the exact DoF determinant is nonzero, else 0.
 *
 * # Safety
 *
 * `element` must be a live handle and `out` valid for writes.
 */
int32_t fe_element_unisolvent(const struct FeElement *element, int32_t *out);

/**
 * DoF table as JSON; release with `fe_string_free`.
 *
 * # Safety
 *
 * `element` must be a live handle and `out` valid for writes.
 */
int32_t fe_element_to_json(const struct FeElement *element, char **out);

/**
 * # Safety
 *
 * `s` must come from this library and not be used afterwards; null is ignored.
 */
void fe_string_free(char *s);

/**
 * Closed-form scalar DoF counts per vertex, edge, face and interior.
 *
 * # Safety
 *
 * `out` must be valid for writing four values.
 */
int32_t fe_scalar_counts(uint32_t k, int32_t rv, int32_t re, int32_t rf, int64_t *out);

/**
 * Loads tet1, tet2, fan3, tri2, seg2 or a mesh file.
 *
 * # Safety
 *
 * `name` must be a nul-terminated string and `out` valid for writes.
 */
int32_t fe_mesh_load(const char *name, struct FeMesh **out);

/**
 * # Safety
 *
 * `mesh` must come from `fe_mesh_load` and not be used afterwards; null is ignored.
 */
void fe_mesh_free(struct FeMesh *mesh);

/**
 * Writes up to `len` sub-simplex counts by dimension and stores the mesh dimension plus one in `written`.
 *
 * # Safety
 *
 * `mesh` must be a live handle, `out` valid for `len` writes and `written` valid for one.
 */
int32_t fe_mesh_counts(const struct FeMesh *mesh,
                       uintptr_t *out,
                       uintptr_t len,
                       uintptr_t *written);

/**
 * Runs the exactness check of a named complex ("hermite", "argyris", "stokes") on `mesh`;
 * writes 1 when every property holds.
 *
 * # Safety
 *
 * `mesh` must be a live handle, `suite` nul-terminated and `exact` valid for writes.
 */
int32_t fe_complex_exact(const struct FeMesh *mesh, const char *suite, int32_t *exact);

#endif  /* FE_COMPLEX_H */
