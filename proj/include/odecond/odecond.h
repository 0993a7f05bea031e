/**
 * @file odecond.h
 * @brief C interface to the odecond library.
 *
 * Every function returning int returns an odc_status. On failure the
 * message of the most recent error on the calling thread is available
 * from odc_last_error(). Objects are opaque and owned by the caller;
 * strings returned through char** are released with odc_string_free().
 * Matrices are dense, row-major, n x n.
 */
#ifndef ODECOND_H
#define ODECOND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ODECOND_BUILDING)
#    define ODC_API __declspec(dllexport)
#  else
#    define ODC_API __declspec(dllimport)
#  endif
#else
#  define ODC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum odc_status {
    ODC_OK = 0,
    ODC_ERR_INVALID_ARGUMENT = 1,
    ODC_ERR_NON_SQUARE = 2,
    ODC_ERR_NON_FINITE = 3,
    ODC_ERR_EIGEN_FAILURE = 4,
    ODC_ERR_NON_DIAGONALIZABLE = 5,
    ODC_ERR_AMBIGUOUS_GROUPING = 6,
    ODC_ERR_UNSUPPORTED_SPECTRUM = 7,
    ODC_ERR_ZERO_PROJECTION = 8,
    ODC_ERR_UNSUPPORTED_NORM = 9,
    ODC_ERR_DEGENERATE_CONSTANT = 10,
    ODC_ERR_NOT_MULTIPLE_OF_PI = 11,
    ODC_ERR_PARSE = 12,
    ODC_ERR_IO = 13,
    ODC_ERR_UNAVAILABLE = 14,
    ODC_ERR_INTERNAL = 15
} odc_status;

typedef enum odc_norm { ODC_NORM_1 = 1, ODC_NORM_2 = 2, ODC_NORM_INF = 3 } odc_norm;

typedef enum odc_block_kind {
    ODC_BLOCK_REAL = 0,
    ODC_BLOCK_COMPLEX = 1,
    ODC_BLOCK_UNSUPPORTED = 2
} odc_block_kind;

ODC_API const char* odc_version(void);
ODC_API const char* odc_status_name(int status);
ODC_API const char* odc_last_error(void);
ODC_API void odc_string_free(char* s);

/** Process exit code for a status: 0 ok, 2 unsupported spectrum,
 *  3 zero projection, 1 for everything else. */
ODC_API int odc_exit_code(int status);

/* Run configuration and commands (analyze, demo, envelope, branches). */

typedef struct odc_config odc_config;

ODC_API int odc_config_create(odc_config** out);
ODC_API void odc_config_destroy(odc_config* cfg);
ODC_API int odc_config_set_command(odc_config* cfg, const char* name);
/** Matrix CSV or JSON scenario. */
ODC_API int odc_config_set_input(odc_config* cfg, const char* path);
ODC_API int odc_config_set_output(odc_config* cfg, const char* dir);
ODC_API int odc_config_set_y0(odc_config* cfg, const double* v, size_t n);
ODC_API int odc_config_set_z0(odc_config* cfg, const double* v, size_t n);
/** Parses a comma separated list such as "1,0,-2". */
ODC_API int odc_config_set_y0_text(odc_config* cfg, const char* list);
ODC_API int odc_config_set_z0_text(odc_config* cfg, const char* list);
/** "1", "2" or "inf". */
ODC_API int odc_config_set_norm(odc_config* cfg, const char* name);
ODC_API int odc_config_set_t0(odc_config* cfg, double t0);
ODC_API int odc_config_set_t1(odc_config* cfg, double t1);
ODC_API int odc_config_set_steps(odc_config* cfg, size_t steps);
ODC_API int odc_config_set_seed(odc_config* cfg, uint64_t seed);
ODC_API int odc_config_set_tol_group(odc_config* cfg, double tol);
ODC_API int odc_config_set_vw(odc_config* cfg, double V, double W);
ODC_API int odc_config_set_V(odc_config* cfg, double V);
ODC_API int odc_config_set_W(odc_config* cfg, double W);

/** Reads the input file into the fields not set explicitly. */
ODC_API int odc_config_load_input(odc_config* cfg);
/** Scenario content (matrix, y0, z0, norm, t, tolerance) as JSON. */
ODC_API int odc_config_scenario_json(const odc_config* cfg, char** out);
ODC_API int odc_config_from_json(const char* text, odc_config** out);
ODC_API int odc_config_same_scenario(const odc_config* a, const odc_config* b, int* same);

/** Runs the configured command; report receives the text meant for stdout
 *  (may be NULL). */
ODC_API int odc_run(odc_config* cfg, char** report);

/* Scenarios and condition-number series. */

typedef struct odc_scenario odc_scenario;
typedef struct odc_series odc_series;

/** z0 may be NULL for the worst-case condition number; otherwise it is
 *  normalized in the chosen norm. */
ODC_API int odc_scenario_create(size_t n, const double* A, const double* y0, const double* z0, int norm,
                                double t0, double t1, size_t steps, odc_scenario** out);
ODC_API void odc_scenario_destroy(odc_scenario* s);
ODC_API int odc_k_exact(const odc_scenario* s, double t, double* out);
ODC_API int odc_k_asym(const odc_scenario* s, double t, double* out);

typedef struct odc_sample {
    double t;
    double k_exact;
    double k_asym;
    double osf;
    double ot;
    double eps_t;
    double eps_tu;
    double precision_bound;  /**< meaningful only when bounded != 0 */
    int bounded;
} odc_sample;

typedef struct odc_profile {
    double osf;
    double period;
    double ot_min;
    double ot_max;
    double a_max;
    double a_minmax;
    double a_maxmin;
    double a_min;
    double q1;
    double V1;
    double W1;
} odc_profile;

ODC_API int odc_sweep(const odc_scenario* s, odc_series** out);
ODC_API void odc_series_destroy(odc_series* series);
ODC_API size_t odc_series_size(const odc_series* series);
ODC_API int odc_series_sample(const odc_series* series, size_t i, odc_sample* out);
/** ODC_ERR_UNAVAILABLE unless the leading block is a complex pair under the 2-norm. */
ODC_API int odc_series_profile(const odc_series* series, odc_profile* out);
ODC_API int odc_series_csv(const odc_series* series, char** out);
ODC_API int odc_series_summary_json(const odc_series* series, char** out);

/* Spectrum partition. */

typedef struct odc_spectrum odc_spectrum;

typedef struct odc_block_info {
    int kind; /**< odc_block_kind */
    double r;
    double omega;
    double f;
    int has_ellipse;
    double V;
    double W;
    double delta;
    double sigma;
    double mu;
    double theta;
} odc_block_info;

ODC_API int odc_spectrum_analyze(size_t n, const double* A, int norm, double tol_group, odc_spectrum** out);
ODC_API void odc_spectrum_destroy(odc_spectrum* sp);
ODC_API size_t odc_spectrum_block_count(const odc_spectrum* sp);
ODC_API int odc_spectrum_block(const odc_spectrum* sp, size_t i, odc_block_info* out);

/* Scalar kernels. */

typedef struct odc_h_extremes {
    double maxmax;
    double minmax;
    double maxmin;
    double minmin;
    double q1;
} odc_h_extremes;

ODC_API int odc_mat_exp(size_t n, const double* A, double t, double* out);
ODC_API int odc_f_vw_max(double V, double W, double x, double* out);
ODC_API int odc_f_vw_min(double V, double W, double x, double* out);
ODC_API int odc_h_envelope(double V, double W, double beta, double* h_max, double* h_min);
ODC_API int odc_h_extremes_eval(double V, double W, odc_h_extremes* out);

#ifdef __cplusplus
}
#endif

#endif /* ODECOND_H */
