/* Links against the static library and drives it through the header. */
#include <stdio.h>
#include <string.h>

#include "galois_trees.h"

#define CHECK(cond)                                                        \
  do {                                                                     \
    if (!(cond)) {                                                         \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);           \
      return 1;                                                            \
    }                                                                      \
  } while (0)

static const char *THETA =
    "{\"vertices\":[\"u\",\"v\"],"
    "\"edges\":[{\"id\":\"x\",\"src\":\"u\",\"tgt\":\"v\"},"
    "{\"id\":\"y\",\"src\":\"u\",\"tgt\":\"v\"},"
    "{\"id\":\"z\",\"src\":\"u\",\"tgt\":\"v\"}],"
    "\"group\":{\"cyclic\":[2]},\"voltage\":{\"x\":[1]}}";

int main(void) {
  GtSpec *spec = NULL;
  CHECK(gt_spec_from_json(THETA, &spec) == GT_STATUS_OK);

  size_t vertices = 0, edges = 0;
  CHECK(gt_spec_size(spec, GT_GRAPH_COVER, &vertices, &edges) == GT_STATUS_OK);
  CHECK(vertices == 4 && edges == 6);

  char *count = NULL;
  CHECK(gt_spec_tree_count(spec, GT_GRAPH_COVER, &count) == GT_STATUS_OK);
  CHECK(strcmp(count, "12") == 0);
  gt_string_free(count);

  GtReport *report = NULL;
  bool holds = false;
  CHECK(gt_verify(spec, &report) == GT_STATUS_OK);
  CHECK(gt_report_holds(report, &holds) == GT_STATUS_OK && holds);
  gt_report_free(report);
  gt_spec_free(spec);

  GtSpec *bad = NULL;
  CHECK(gt_spec_from_json("{\"vertices\":[]", &bad) == GT_STATUS_INVALID_SPEC);
  CHECK(bad == NULL && gt_last_error() != NULL);
  CHECK(strcmp(gt_status_name(GT_STATUS_INVALID_SPEC), "invalid spec") == 0);

  puts("ok");
  return 0;
}
