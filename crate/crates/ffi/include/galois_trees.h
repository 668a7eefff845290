#ifndef GALOIS_TREES_H
#define GALOIS_TREES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call.
 */
typedef enum GtStatus {
  GT_STATUS_OK = 0,
  GT_STATUS_NULL_POINTER = 1,
  GT_STATUS_INVALID_UTF8 = 2,
  /**
   * The document or one of its ids, elements or lengths is malformed.
   */
  GT_STATUS_INVALID_SPEC = 3,
  /**
   * Well formed, but outside what the operation accepts (a trivial or
   * disconnected cover, say).
   */
  GT_STATUS_UNSUPPORTED = 4,
  /**
   * Internal failure; the library caught a panic.
   */
  GT_STATUS_INTERNAL = 5,
} GtStatus;

/**
 * Which graph of a cover a query refers to.
 */
typedef enum GtGraph {
  GT_GRAPH_BASE = 0,
  GT_GRAPH_COVER = 1,
} GtGraph;

/**
 * The result of verifying the factorization for one spec.
 */
typedef struct GtReport GtReport;

/**
 * A parsed cover spec together with its built cover.
 */
typedef struct GtSpec GtSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into the library on this thread; do not free it.
 */
const char *gt_last_error(void);

/**
 * Static description of a status code.
 */
const char *gt_status_name(enum GtStatus status);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void gt_string_free(char *s);

/**
 * Parses a JSON cover spec and builds its cover.
 */
enum GtStatus gt_spec_from_json(const char *json, struct GtSpec **out);

/**
 * Releases a spec handle. Null is ignored.
 */
void gt_spec_free(struct GtSpec *spec);

/**
 * The spec in canonical JSON form.
 */
enum GtStatus gt_spec_to_json(const struct GtSpec *spec, char **out);

/**
 * Order of the deck group.
 */
enum GtStatus gt_spec_group_order(const struct GtSpec *spec, uint64_t *out);

/**
 * Whether every dilation subgroup is trivial.
 */
enum GtStatus gt_spec_is_free(const struct GtSpec *spec, bool *out);

/**
 * Vertex and edge counts of the base or the cover.
 */
enum GtStatus gt_spec_size(const struct GtSpec *spec,
                           enum GtGraph which,
                           size_t *vertices,
                           size_t *edges);

/**
 * Number of spanning trees, as a decimal string.
 */
enum GtStatus gt_spec_tree_count(const struct GtSpec *spec, enum GtGraph which, char **out);

/**
 * Invariant factors of the Jacobian as a JSON array.
 */
enum GtStatus gt_spec_jacobian_json(const struct GtSpec *spec, enum GtGraph which, char **out);

/**
 * The Jacobian polynomial in the base edge variables, as JSON terms. For
 * the cover, each edge variable is specialized to its image's variable.
 */
enum GtStatus gt_spec_polynomial_json(const struct GtSpec *spec, enum GtGraph which, char **out);

/**
 * Checks the factorization of the cover's Jacobian polynomial and tree
 * count through base data. A report is produced even when the identity
 * fails; inspect it with [`gt_report_holds`].
 */
enum GtStatus gt_verify(const struct GtSpec *spec, struct GtReport **out);

/**
 * Releases a report handle. Null is ignored.
 */
void gt_report_free(struct GtReport *report);

/**
 * Polynomial identity and agreement of all three tree counts.
 */
enum GtStatus gt_report_holds(const struct GtReport *report, bool *out);

/**
 * The cover's spanning-tree count, as a decimal string.
 */
enum GtStatus gt_report_tree_count(const struct GtReport *report, char **out);

/**
 * The count predicted from the character weights, or null when the
 * product failed to be integral.
 */
enum GtStatus gt_report_predicted_tree_count(const struct GtReport *report, char **out);

/**
 * The specialized cover polynomial computed directly, as JSON terms.
 */
enum GtStatus gt_report_polynomial_json(const struct GtReport *report, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GALOIS_TREES_H */
