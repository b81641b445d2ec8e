/* C interface to the bksim Darcy-Brinkman-Korteweg solver.
 *
 * Handles are opaque. Every fallible call returns a bksim_status; on failure
 * bksim_last_error() holds a message for the calling thread. Strings returned
 * through char** out-parameters are owned by the caller and released with
 * bksim_string_free().
 */
#ifndef BKSIM_BKSIM_H
#define BKSIM_BKSIM_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(BKSIM_BUILDING_LIBRARY)
#    define BKSIM_API __declspec(dllexport)
#  else
#    define BKSIM_API __declspec(dllimport)
#  endif
#else
#  define BKSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bksim_status {
    BKSIM_OK = 0,
    BKSIM_ERR_INVALID_ARGUMENT = 1,
    BKSIM_ERR_SINGULAR_PERMEABILITY = 2,
    BKSIM_ERR_NO_CONVERGENCE = 3,
    BKSIM_ERR_CFL_VIOLATION = 4,
    BKSIM_ERR_NON_FINITE = 5,
    BKSIM_ERR_UNKNOWN_KEY = 6,
    BKSIM_ERR_TYPE_MISMATCH = 7,
    BKSIM_ERR_CONSTRAINT_VIOLATION = 8,
    BKSIM_ERR_MISSING_KEY = 9,
    BKSIM_ERR_MALFORMED_LINE = 10,
    BKSIM_ERR_BAD_MAGIC = 11,
    BKSIM_ERR_SIZE_MISMATCH = 12,
    BKSIM_ERR_NON_FINITE_PAYLOAD = 13,
    BKSIM_ERR_EMPTY_SERIES = 14,
    BKSIM_ERR_IO = 15,
    BKSIM_ERR_INTERNAL = 99
} bksim_status;

typedef enum bksim_field {
    BKSIM_FIELD_C = 0,       /* nx*ny cell values */
    BKSIM_FIELD_U = 1,       /* (nx+1)*ny x-face values */
    BKSIM_FIELD_V = 2,       /* nx*(ny+1) y-face values */
    BKSIM_FIELD_P_TILDE = 3, /* nx*ny cell values */
    BKSIM_FIELD_PRESSURE = 4 /* nx*ny physical pressure, zero mean */
} bksim_field;

typedef struct bksim_config bksim_config;
typedef struct bksim_sim bksim_sim;

BKSIM_API const char* bksim_version(void);
BKSIM_API const char* bksim_status_name(bksim_status status);
/* Message of the last failure on this thread; empty when none. */
BKSIM_API const char* bksim_last_error(void);
BKSIM_API void bksim_string_free(char* s);

/* Configuration */
BKSIM_API bksim_status bksim_config_parse(const char* text, bksim_config** out);
BKSIM_API bksim_status bksim_config_load(const char* path, bksim_config** out);
BKSIM_API bksim_status bksim_config_serialize(const bksim_config* cfg, char** out);
BKSIM_API void bksim_config_free(bksim_config* cfg);
/* Annotated listing of every key with its default. */
BKSIM_API bksim_status bksim_default_config(char** out);

/* Batch drivers. *all_pass is 1 when every estimate / order check passed.
 * out_dir may be NULL: BKSIM_OUT, then run.out_dir, is used. */
BKSIM_API bksim_status bksim_run(const bksim_config* cfg, const char* out_dir, int* all_pass, char** report);
/* Convergence table(s) as CSV in *table; temporal != 0 appends a time study. */
BKSIM_API bksim_status bksim_mms(const bksim_config* cfg, int levels, int temporal, int* all_pass, char** table);
/* Offline estimate check of a timeseries CSV. cfg may be NULL, in which case
 * d = 0 and hmin = 1 are assumed. */
BKSIM_API bksim_status bksim_check_timeseries(const char* csv_path, const bksim_config* cfg, int* all_pass,
                                              char** report);

/* Stepping */
BKSIM_API bksim_status bksim_sim_create(const bksim_config* cfg, bksim_sim** out);
BKSIM_API void bksim_sim_free(bksim_sim* sim);
BKSIM_API bksim_status bksim_sim_step(bksim_sim* sim, double dt, int* cg_iterations);
BKSIM_API bksim_status bksim_sim_dims(const bksim_sim* sim, int* nx, int* ny);
BKSIM_API bksim_status bksim_sim_time(const bksim_sim* sim, double* t);
/* Largest dt the explicit terms allow for the current state. */
BKSIM_API bksim_status bksim_sim_max_stable_dt(const bksim_sim* sim, double* dt);
/* Copies a field into buf; *len is the capacity on entry and the size on exit.
 * BKSIM_ERR_SIZE_MISMATCH when the capacity is too small. */
BKSIM_API bksim_status bksim_sim_copy_field(const bksim_sim* sim, bksim_field field, double* buf, size_t* len);
BKSIM_API bksim_status bksim_sim_write_snapshot(const bksim_sim* sim, const char* path);
/* Replaces the state; the snapshot grid must match the simulation grid. */
BKSIM_API bksim_status bksim_sim_read_snapshot(bksim_sim* sim, const char* path);

#ifdef __cplusplus
}
#endif

#endif
