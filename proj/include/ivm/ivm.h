#ifndef IVM_IVM_H
#define IVM_IVM_H

#include <stdint.h>

#if defined(IVM_BUILDING_LIBRARY)
#define IVM_API __attribute__((visibility("default")))
#else
#define IVM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ivm_status {
  IVM_OK = 0,
  IVM_E_NULL = 1,      /* a required pointer argument was null */
  IVM_E_INVALID = 2,   /* argument or spec rejected */
  IVM_E_PARSE = 3,     /* malformed JSON */
  IVM_E_INTERNAL = 4,  /* unexpected failure inside the library */
} ivm_status;

typedef enum ivm_mode_kind { IVM_MODE_REAL = 0, IVM_MODE_CARTAN = 1, IVM_MODE_CENTRAL = 2, IVM_MODE_DERIVATION = 3 } ivm_mode_kind;

/* e_alpha t^level (index = finite root index), b_i t^level (index = Cartan basis index), c or d. */
typedef struct ivm_mode {
  int kind;
  int level;
  int index;
} ivm_mode;

typedef struct ivm_algebra ivm_algebra;
typedef struct ivm_experiment ivm_experiment;

IVM_API const char* ivm_version(void);
/* Message of the last failing call on this thread; empty when none. */
IVM_API const char* ivm_last_error(void);
/* Frees strings returned through char** out-parameters. */
IVM_API void ivm_string_free(char* s);

/* Affine algebra of a simply-laced type such as "A1", "D4", "E6". */
IVM_API ivm_status ivm_algebra_create(const char* type, ivm_algebra** out);
IVM_API void ivm_algebra_destroy(ivm_algebra* alg);
IVM_API ivm_status ivm_algebra_rank(const ivm_algebra* alg, int* out);
IVM_API ivm_status ivm_algebra_finite_root_count(const ivm_algebra* alg, int* out);
/* Number of affine roots with |level| <= max_level. */
IVM_API ivm_status ivm_algebra_roots_in_box(const ivm_algebra* alg, int max_level, int* out);
/* [x, y] as JSON: [{"mode": name, "coeff": "p/q"}, ...]. */
IVM_API ivm_status ivm_algebra_bracket(const ivm_algebra* alg, ivm_mode x, ivm_mode y, char** json_out);
IVM_API ivm_status ivm_algebra_mode_name(const ivm_algebra* alg, ivm_mode x, char** out);

/* Parses a schema-1 experiment spec. Validation happens at run time. */
IVM_API ivm_status ivm_experiment_create(const char* spec_json, ivm_experiment** out);
IVM_API void ivm_experiment_destroy(ivm_experiment* ex);
IVM_API ivm_status ivm_experiment_set_jobs(ivm_experiment* ex, int jobs);
IVM_API ivm_status ivm_experiment_set_seed(ivm_experiment* ex, uint64_t seed);
/* Restricts the run to one task; null restores the spec's task list. */
IVM_API ivm_status ivm_experiment_set_task(ivm_experiment* ex, const char* task);
/* Writes the JSON report and the process exit code (0 ok, 1 failed,
   2 inconclusive, 3 invalid spec). An invalid spec still returns IVM_OK
   with an error report and exit code 3. */
IVM_API ivm_status ivm_experiment_run(ivm_experiment* ex, char** json_out, int* exit_code);
/* JSON array of task names. */
IVM_API ivm_status ivm_task_names(char** json_out);

#ifdef __cplusplus
}
#endif

#endif
