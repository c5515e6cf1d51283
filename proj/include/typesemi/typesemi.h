#ifndef TYPESEMI_TYPESEMI_H
#define TYPESEMI_TYPESEMI_H

/* C interface to the type semigroup engine. All handles are opaque; every
 * call returns a status code, and on failure ts_last_error() describes it
 * (thread-local, valid until the next call on the same thread). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TS_API __declspec(dllexport)
#else
#define TS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ts_status {
  TS_OK = 0,
  TS_DIMENSION_MISMATCH,
  TS_STEP_NOT_APPLICABLE,
  TS_INVALID_PAIR,
  TS_NONCOMMUTING_MATRICES,
  TS_ROW_ZERO,
  TS_BAD_REFERENCE,
  TS_OVERLAPPING_CYLINDERS,
  TS_NONCOMPOSABLE_WORD,
  TS_GROUP_TOO_LARGE,
  TS_TOO_LARGE,
  TS_ZERO_TARGET,
  TS_INVALID_INPUT,
  TS_INTERNAL,
  TS_NULL_ARGUMENT
} ts_status;

typedef struct ts_model  ts_model;
typedef struct ts_result ts_result;

typedef struct ts_options {
  uint64_t budget_states;
  uint32_t budget_coord;
  uint32_t modulus_bound;
  uint32_t coeff_bound;
  uint32_t mult_bound;
  uint64_t seed;
  uint32_t samples;
} ts_options;

TS_API ts_options  ts_options_default(void);
TS_API char const* ts_status_name(ts_status s);

/* Parses a model file (graph, kgraph or action) from JSON text. */
TS_API ts_status ts_model_parse(char const* json, size_t len, ts_model** out);
TS_API void      ts_model_free(ts_model* m);
TS_API size_t    ts_model_dim(ts_model const* m);

/* Vectors are passed as text: comma- or space-separated integers. A NULL
 * options pointer means ts_options_default(). */
TS_API ts_status ts_classify(ts_model const* m, ts_options const* o, ts_result** out);
TS_API ts_status ts_equiv(ts_model const* m, char const* lhs, char const* rhs,
                          ts_options const* o, ts_result** out);
TS_API ts_status ts_leq(ts_model const* m, char const* lhs, char const* rhs,
                        ts_options const* o, ts_result** out);
TS_API ts_status ts_paradox(ts_model const* m, char const* target, unsigned k, unsigned l,
                            ts_options const* o, ts_result** out);
TS_API ts_status ts_state(ts_model const* m, char const* target, ts_options const* o,
                          ts_result** out);
TS_API ts_status ts_coboundary(ts_model const* m, ts_options const* o, ts_result** out);
TS_API ts_status ts_unperforation(ts_model const* m, ts_options const* o, ts_result** out);
TS_API ts_status ts_oracle_compare(ts_model const* m, ts_options const* o, ts_result** out);
TS_API ts_status ts_stabilize_test(ts_model const* m, size_t n, ts_options const* o,
                                   ts_result** out);

/* 0 definite, 1 internal consistency failure, 3 unknown within budget. */
TS_API int         ts_result_exit_code(ts_result const* r);
TS_API char const* ts_result_verdict(ts_result const* r);
TS_API char const* ts_result_json(ts_result const* r);
TS_API char const* ts_result_text(ts_result const* r);
TS_API void        ts_result_free(ts_result* r);

TS_API char const* ts_last_error(void);
TS_API ts_status   ts_last_error_code(void);

#ifdef __cplusplus
}
#endif

#endif
