/* C interface to the gkdvbh simulation library.
 *
 * Every function returns a gkdvbh_status (GKDVBH_OK on success) unless noted.
 * Objects are reached through opaque handles and must be released with the
 * matching *_free call. On failure gkdvbh_last_error() returns a description
 * of the most recent error on the calling thread.
 */
#ifndef GKDVBH_H
#define GKDVBH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GKDVBH_API __declspec(dllexport)
#else
#define GKDVBH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gkdvbh_status {
  GKDVBH_OK = 0,
  GKDVBH_E_VERIFICATION = 1, /* a verification suite reported failures */
  GKDVBH_E_CONFIG = 2,       /* bad configuration or arguments */
  GKDVBH_E_SOLVER = 3,       /* Newton divergence or singular system */
  GKDVBH_E_IO = 4,           /* file could not be read or written */
  GKDVBH_E_INTERNAL = 5
} gkdvbh_status;

typedef struct gkdvbh_config gkdvbh_config;
typedef struct gkdvbh_record gkdvbh_record;
typedef struct gkdvbh_report gkdvbh_report;

GKDVBH_API const char* gkdvbh_version(void);

/* Message for the last error raised on this thread; empty string if none. */
GKDVBH_API const char* gkdvbh_last_error(void);

/* --- configuration ------------------------------------------------- */

/* Parses `key = value` config text ('#' comments); NULL/empty text gives the
 * documented defaults. */
GKDVBH_API gkdvbh_status gkdvbh_config_parse(const char* text,
                                             gkdvbh_config** out);
GKDVBH_API gkdvbh_status gkdvbh_config_parse_file(const char* path,
                                                  gkdvbh_config** out);
/* Assigns one key, same grammar and validation as a config line. */
GKDVBH_API gkdvbh_status gkdvbh_config_set(gkdvbh_config* config,
                                           const char* key,
                                           const char* value);
/* Canonical echo of the full configuration; returns the number of bytes that
 * would be written (excluding the terminator). */
GKDVBH_API size_t gkdvbh_config_echo(const gkdvbh_config* config, char* buffer,
                                     size_t capacity);
GKDVBH_API size_t gkdvbh_config_hash(const gkdvbh_config* config, char* buffer,
                                     size_t capacity);
GKDVBH_API void gkdvbh_config_free(gkdvbh_config* config);

/* --- simulation ---------------------------------------------------- */

GKDVBH_API gkdvbh_status gkdvbh_simulate(const gkdvbh_config* config,
                                         gkdvbh_record** out);

/* Simulates and writes run.csv + run_meta.txt (+ plot.svg when write_svg is
 * nonzero) into out_dir (NULL: the config's output_dir). */
GKDVBH_API gkdvbh_status gkdvbh_run_to_dir(const gkdvbh_config* config,
                                           const char* out_dir, int write_svg,
                                           gkdvbh_record** out);

GKDVBH_API size_t gkdvbh_record_size(const gkdvbh_record* record);
/* Column accessors; pointers stay valid until the record is freed.
 * bc_residuals is row-major with 3 values per sample. */
GKDVBH_API const double* gkdvbh_record_times(const gkdvbh_record* record);
GKDVBH_API const double* gkdvbh_record_l2(const gkdvbh_record* record);
GKDVBH_API const double* gkdvbh_record_h1_semi(const gkdvbh_record* record);
GKDVBH_API const double* gkdvbh_record_linf(const gkdvbh_record* record);
GKDVBH_API const double* gkdvbh_record_u_at_1(const gkdvbh_record* record);
GKDVBH_API const double* gkdvbh_record_bc_residuals(
    const gkdvbh_record* record);
GKDVBH_API const int* gkdvbh_record_newton_iters(const gkdvbh_record* record);
GKDVBH_API void gkdvbh_record_free(gkdvbh_record* record);

/* --- analysis ------------------------------------------------------ */

/* Least-squares slope of ln(l2) over [t_start, t_end]. */
GKDVBH_API gkdvbh_status gkdvbh_fit_decay(const gkdvbh_record* record,
                                          double t_start, double t_end,
                                          double* slope, double* r_squared);
/* zeta = nu - beta(1-gamma)^2/4; positive is 1 when the hypothesis holds. */
GKDVBH_API gkdvbh_status gkdvbh_rate_zeta(const gkdvbh_config* config,
                                          double* zeta, int* positive);
GKDVBH_API gkdvbh_status gkdvbh_rate_varrho(const gkdvbh_config* config,
                                            double theta, double* varrho);
GKDVBH_API gkdvbh_status gkdvbh_condition_2p55(const gkdvbh_config* config,
                                               int* satisfied,
                                               double* threshold);

/* --- experiment drivers -------------------------------------------- */

/* Runs the comparison over n_configs config files, writes compare.csv and
 * slopes.txt into out_dir. ordering_holds (may be NULL) reports the
 * curvature-is-slower check; GKDVBH_E_VERIFICATION is returned if a
 * curvature run is present and decays at least as fast as the others. */
GKDVBH_API gkdvbh_status gkdvbh_compare_files(const char* const* config_paths,
                                              size_t n_configs,
                                              const char* out_dir,
                                              int* ordering_holds);

/* Full verification battery; trials must be >= 1. */
GKDVBH_API gkdvbh_status gkdvbh_verify(uint64_t seed, int trials,
                                       gkdvbh_report** out);
GKDVBH_API size_t gkdvbh_report_size(const gkdvbh_report* report);
GKDVBH_API int gkdvbh_report_passed(const gkdvbh_report* report);
/* One PASS/FAIL line per item, i < gkdvbh_report_size(). */
GKDVBH_API size_t gkdvbh_report_line(const gkdvbh_report* report, size_t i,
                                     char* buffer, size_t capacity);
GKDVBH_API void gkdvbh_report_free(gkdvbh_report* report);

/* Spectral differentiation convergence table for a named target
 * ("exp" | "sin_pi" | "one"); errors[i] is the max nodal derivative error at
 * n_list[i] points. */
GKDVBH_API gkdvbh_status gkdvbh_grid_report(const char* target,
                                            const int* n_list, size_t count,
                                            double kte_alpha, double* errors);

#ifdef __cplusplus
}
#endif

#endif /* GKDVBH_H */
