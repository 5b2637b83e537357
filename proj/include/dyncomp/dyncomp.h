/* dyncomp C API.
 *
 * Every call returns a dc_status. Documents come back as heap strings owned
 * by the caller (release with dc_string_free). On failure, dc_last_error()
 * holds a message for the calling thread until its next dc_* call.
 */
#ifndef DYNCOMP_DYNCOMP_H
#define DYNCOMP_DYNCOMP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DC_API __declspec(dllexport)
#else
#define DC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dc_status {
  DC_OK = 0,
  DC_INVALID_ARGUMENT = 1,
  DC_PARSE_ERROR = 2,
  DC_VALIDATION_ERROR = 3,
  DC_IO_ERROR = 4,
  DC_KIND_MISMATCH = 5,
  DC_BALL_TOO_LARGE = 6,
  DC_DOUBLING_NOT_FOUND = 7,
  DC_NO_EPSILON_GAP = 8,
  DC_HYPOTHESIS_VIOLATED = 9,
  DC_INVARIANT_BROKEN = 10,
  DC_EPSILON_SCHEDULE_EXHAUSTED = 11,
  DC_NO_DENSITY_GAP = 12,
  DC_NO_SUITABLE_N = 13,
  DC_NOT_TRANSITIVE = 14,
  DC_NO_MEASURE_GAP = 15,
  DC_STEP_BUDGET_EXCEEDED = 16,
  DC_SEARCH_BUDGET_EXCEEDED = 17,
  DC_INTERNAL = 18
} dc_status;

typedef enum dc_format { DC_FORMAT_JSON = 0, DC_FORMAT_CSV = 1 } dc_format;

typedef struct dc_scenario dc_scenario;

DC_API const char* dc_version(void);
DC_API const char* dc_status_name(dc_status status);
DC_API const char* dc_last_error(void);
DC_API void dc_string_free(char* text);

/* Scenarios */
DC_API dc_status dc_scenario_load(const char* path, dc_scenario** out);
DC_API dc_status dc_scenario_parse(const char* json_text, dc_scenario** out);
DC_API void dc_scenario_free(dc_scenario* scenario);
DC_API size_t dc_scenario_points(const dc_scenario* scenario);
DC_API dc_status dc_scenario_to_json(const dc_scenario* scenario, char** out);

/* Word-metric balls: rows n, |B_n|, |B_2n|/|B_n| for n = 0..nmax. */
DC_API dc_status dc_ball_growth(const char* group, int nmax, dc_format format, char** out);

/* Window densities of a named set for n = 0..nmax next to the exact values. */
DC_API dc_status dc_density_table(const dc_scenario* scenario, const char* set, int nmax,
                                  dc_format format, char** out);

/* Negative arguments (NULL for epsilon) fall back to the scenario's params,
 * then to built-in defaults. */
DC_API dc_status dc_hypothesis(const dc_scenario* scenario, int d_radius, int m,
                               const char* epsilon, int* holds, char** out);
DC_API dc_status dc_witness(const dc_scenario* scenario, int d_radius, int m, const char* epsilon,
                            int* verified, char** out);
DC_API dc_status dc_verify(const dc_scenario* scenario, const char* witness_json, int* passed,
                           char** out);
/* weak != 0: weak comparison from density gaps; otherwise full comparison. */
DC_API dc_status dc_compare(const dc_scenario* scenario, int weak, int ord, int* verified,
                            char** out);
DC_API dc_status dc_oracle(const dc_scenario* scenario, int word_radius, int max_sets,
                           int* subequivalent, char** out);

/* Random scenario document. group: "z", "z2" or "heisenberg". */
typedef struct dc_gen_options {
  const char* group;
  size_t min_points;
  size_t max_points;
  int transitive;
  int metric;
  double a_fraction;
  double b_fraction;
} dc_gen_options;

DC_API dc_gen_options dc_gen_defaults(void);
DC_API dc_status dc_generate(uint64_t seed, const dc_gen_options* options, char** out);

#ifdef __cplusplus
}
#endif

#endif /* DYNCOMP_DYNCOMP_H */
