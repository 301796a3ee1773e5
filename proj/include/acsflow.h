#ifndef ACSFLOW_H
#define ACSFLOW_H

/* C interface to the affine curve shortening toolkit. All functions are
 * thread-compatible: handles are not shared-state, and the error message
 * store is per-thread. Pointers returned as handles are owned by the caller
 * and released with the matching _free function.
 *
 * Status codes double as process exit codes in the bundled CLI. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define ACSF_OK 0
#define ACSF_ERROR_INVALID_INPUT 2
#define ACSF_ERROR_NUMERICAL 3
#define ACSF_ERROR_IO 4

typedef struct acsf_curve acsf_curve;
typedef struct acsf_trajectory acsf_trajectory;

const char* acsf_version(void);

/* Message for the last failing call on this thread ("" if none yet).
 * Valid until the next failing call on the same thread. */
const char* acsf_last_error(void);

/* --- curves --------------------------------------------------------------
 * Constructors return NULL on failure (consult acsf_last_error). A curve is
 * n uniformly spaced support samples about an origin; n >= 16. */

acsf_curve* acsf_curve_circle(double radius, int n_samples);
acsf_curve* acsf_curve_ellipse(double a, double b, int n_samples);
acsf_curve* acsf_curve_from_support(const double* h, int n_samples,
                                    double origin_x, double origin_y);
/* JSON file with {"n_samples": ..., "origin": [x, y], "h": [...]}. */
acsf_curve* acsf_curve_read_json(const char* path);
void acsf_curve_free(acsf_curve* c);

int acsf_curve_samples(const acsf_curve* c);
/* copies the support vector into out (len must be >= samples) */
int acsf_curve_support(const acsf_curve* c, double* out, size_t len);
int acsf_curve_area(const acsf_curve* c, double* out);
int acsf_curve_affine_length(const acsf_curve* c, double* out);
int acsf_curve_iso_ratio(const acsf_curve* c, double* out);
int acsf_curve_write_json(const acsf_curve* c, const char* path);

/* --- flow ----------------------------------------------------------------
 * Runs h_t = -(h + h'')^{-1/3} until the enclosed area reaches area_floor.
 * safety scales the CFL step (default 0.2; the scheme destabilizes past
 * ~0.565). Returns NULL on failure. */

acsf_trajectory* acsf_evolve(const acsf_curve* c, double area_floor,
                             double safety);
void acsf_trajectory_free(acsf_trajectory* t);

int acsf_trajectory_snapshots(const acsf_trajectory* t);
int acsf_trajectory_t_end(const acsf_trajectory* t, double* out);
int acsf_trajectory_extinction_estimate(const acsf_trajectory* t, double* out);
/* interpolated curve at time t in [0, t_end]; NULL on failure */
acsf_curve* acsf_trajectory_curve_at(const acsf_trajectory* t, double time);
/* JSONL export, one {t, n_samples, h} object per snapshot line */
int acsf_trajectory_write(const acsf_trajectory* t, const char* path);

/* --- pipelines -----------------------------------------------------------
 * command is one of evolve | classify | invariance | arrival | ndcheck.
 * config_json may be "" or NULL for defaults; artifacts land under out_dir
 * (created if missing, written atomically). On ACSF_OK, *report_out is a
 * malloc'd JSON report string; release it with acsf_string_free. */

int acsf_run(const char* command, const char* config_json, const char* out_dir,
             char** report_out);
void acsf_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* ACSFLOW_H */
