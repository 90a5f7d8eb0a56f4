/* Exercises the shared library through its C header only. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "ivm/ivm.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static void algebra_queries(void) {
  ivm_algebra* g = NULL;
  EXPECT(ivm_algebra_create("A2", &g) == IVM_OK);
  int n = 0;
  EXPECT(ivm_algebra_rank(g, &n) == IVM_OK && n == 2);
  EXPECT(ivm_algebra_finite_root_count(g, &n) == IVM_OK && n == 6);
  EXPECT(ivm_algebra_roots_in_box(g, 1, &n) == IVM_OK && n == 20);
  EXPECT(ivm_algebra_roots_in_box(g, -1, &n) == IVM_E_INVALID);

  /* [h_1 t, h_1 t^-1] = (h_1, h_1) c, a single central term */
  ivm_mode x = {IVM_MODE_CARTAN, 1, 0}, y = {IVM_MODE_CARTAN, -1, 0};
  char* s = NULL;
  EXPECT(ivm_algebra_bracket(g, x, y, &s) == IVM_OK);
  EXPECT(s && strstr(s, "\"c\"") != NULL);
  ivm_string_free(s);

  ivm_mode bad = {IVM_MODE_REAL, 0, 99};
  EXPECT(ivm_algebra_mode_name(g, bad, &s) == IVM_E_INVALID);
  EXPECT(strlen(ivm_last_error()) > 0);
  ivm_algebra_destroy(g);

  EXPECT(ivm_algebra_create("B2", &g) == IVM_E_INVALID && g == NULL);
  EXPECT(ivm_algebra_create(NULL, &g) == IVM_E_NULL);
}

static void experiments(void) {
  ivm_experiment* ex = NULL;
  EXPECT(ivm_experiment_create("{not json", &ex) == IVM_E_PARSE && ex == NULL);

  const char* spec = "{\"schema\": 1, \"algebra\": {\"type\": \"A1\"}, \"box\": {\"K\": 2}, \"tasks\": [\"algebra\"]}";
  EXPECT(ivm_experiment_create(spec, &ex) == IVM_OK);
  EXPECT(ivm_experiment_set_jobs(ex, 0) == IVM_E_INVALID);
  EXPECT(ivm_experiment_set_jobs(ex, 2) == IVM_OK);
  EXPECT(ivm_experiment_set_task(ex, "nonsense") == IVM_E_INVALID);
  EXPECT(ivm_experiment_set_task(ex, "algebra") == IVM_OK);
  char* out = NULL;
  int code = -1;
  EXPECT(ivm_experiment_run(ex, &out, &code) == IVM_OK);
  EXPECT(code == 0);
  EXPECT(out && strstr(out, "\"schema\"") != NULL);
  char* again = NULL;
  EXPECT(ivm_experiment_run(ex, &again, &code) == IVM_OK);
  EXPECT(out && again && strcmp(out, again) == 0);
  ivm_string_free(out);
  ivm_string_free(again);
  ivm_experiment_destroy(ex);

  EXPECT(ivm_experiment_create("{\"schema\": 1, \"algebra\": {\"type\": \"B2\"}}", &ex) == IVM_OK);
  EXPECT(ivm_experiment_run(ex, &out, &code) == IVM_OK);
  EXPECT(code == 3);
  ivm_string_free(out);
  ivm_experiment_destroy(ex);

  EXPECT(ivm_task_names(&out) == IVM_OK && strstr(out, "twist") != NULL);
  ivm_string_free(out);
  EXPECT(ivm_experiment_run(NULL, &out, &code) == IVM_E_NULL);
}

int main(void) {
  EXPECT(ivm_version() && strlen(ivm_version()) > 0);
  algebra_queries();
  experiments();
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  else printf("c api: all checks passed\n");
  return failures ? EXIT_FAILURE : EXIT_SUCCESS;
}
