#ifndef ELASTOSCAT_H
#define ELASTOSCAT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum es_status {
  ES_OK = 0,
  ES_ERR_INVALID_ARGUMENT = 1,
  ES_ERR_GEOMETRY = 2,
  ES_ERR_SINGULAR = 3,
  ES_ERR_PARSE = 4,
  ES_ERR_IO = 5,
  ES_ERR_NOT_CONVERGED = 6,
  ES_ERR_INTERNAL = 99
} es_status;

typedef struct es_config es_config;
typedef struct es_data es_data;
typedef struct es_result es_result;
typedef struct es_report es_report;

/* Message of the last failed call on this thread; "" after a success. */
const char* es_last_error(void);
const char* es_status_name(es_status status);
const char* es_version(void);

/* Solver warnings (ill-conditioning, large residuals). NULL restores stderr. */
typedef void (*es_warning_fn)(const char* message, void* user);
void es_set_warning_handler(es_warning_fn fn, void* user);

es_status es_config_load(const char* path, es_config** out);
es_status es_config_parse(const char* json, es_config** out);
/* Canonical JSON; release with es_string_free. */
es_status es_config_dump(const es_config* config, char** json);
void es_config_free(es_config* config);
void es_string_free(char* s);

/* Noisy synthetic data: phased far field of the obstacle, or phaseless
   two-body data when the config has a ball. */
es_status es_forward(const es_config* config, es_data** out);
es_status es_data_load(const char* path, es_data** out);
es_status es_data_save(const es_data* data, const char* path);
es_status es_data_info(const es_data* data, size_t* count, int* phaseless);
/* Phaseless samples return |u|^2 in re and 0 in im. */
es_status es_data_sample(const es_data* data, size_t index, double* angle, double* re, double* im);
void es_data_free(es_data* data);

/* Runs the iteration. Returns ES_OK when it ran to a stop, converged or
   not; query es_result_summary. Errors before the first iteration (grid
   mismatch, wrong data kind) are reported as status codes. */
es_status es_invert(const es_config* config, const es_data* data, int phaseless, es_result** out);
es_status es_result_summary(const es_result* result, size_t* records, int* converged, double* final_E,
                            double* final_err, int* has_err);
es_status es_result_record(const es_result* result, size_t k, double* E, double* err, int* has_err);
/* Reason the iteration stopped early; "" when it did not. */
const char* es_result_failure(const es_result* result);
es_status es_result_save_history(const es_result* result, const char* path);
es_status es_result_save_curve(const es_result* result, const char* path);
void es_result_free(es_result* result);

es_status es_verify(int quick, es_report** out);
es_status es_acceptance(es_report** out);
size_t es_report_count(const es_report* report);
es_status es_report_entry(const es_report* report, size_t index, const char** name, double* value,
                          double* tolerance, int* passed, double* seconds);
/* Formatted PASS/FAIL line, owned by the report. */
es_status es_report_line(const es_report* report, size_t index, const char** line);
void es_report_free(es_report* report);

#ifdef __cplusplus
}
#endif

#endif
