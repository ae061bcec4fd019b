#ifndef UPCM_C_H
#define UPCM_C_H

/*
 * C interface to the possibilistic clustering library.
 *
 * Objects are opaque handles created by `*_new` / `*_load` / producer calls
 * and released with the matching `*_free`. Every fallible call returns a
 * upcm_status; on failure upcm_last_error() describes the problem for the
 * calling thread until its next failing call.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(UPCM_BUILDING_LIBRARY)
#define UPCM_API __attribute__((visibility("default")))
#else
#define UPCM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct upcm_dataset upcm_dataset;
typedef struct upcm_model upcm_model;
typedef struct upcm_sweep upcm_sweep;

typedef enum {
    UPCM_OK = 0,
    UPCM_ERR_INVALID_ARGUMENT = 1,
    UPCM_ERR_DEGENERATE_DATA = 2,
    UPCM_ERR_TOTAL_ELIMINATION = 3,
    UPCM_ERR_PARSE = 4,
    UPCM_ERR_IO = 5,
    UPCM_ERR_INTERNAL = 99
} upcm_status;

typedef enum {
    UPCM_ALGO_FCM = 0,
    UPCM_ALGO_PCM = 1,
    UPCM_ALGO_APCM = 2,
    UPCM_ALGO_UPCM = 3
} upcm_algorithm;

typedef enum {
    UPCM_CUT_DIRECT = 0,  /* threshold = alpha */
    UPCM_CUT_EXP_NEG = 1  /* threshold = exp(-alpha) */
} upcm_cut_rule;

UPCM_API const char* upcm_last_error(void);
UPCM_API const char* upcm_status_name(upcm_status status);

/* ---- datasets ---------------------------------------------------------- */

/* Preset "dataset1" or "dataset2". */
UPCM_API upcm_status upcm_dataset_generate_preset(const char* name, uint64_t seed, upcm_dataset** out);

/* Isotropic Gaussian mixture. `means` is n_components x dim, row-major. */
UPCM_API upcm_status upcm_dataset_generate(size_t n_components, size_t dim, const double* means,
                                           const double* stddevs, const size_t* counts, uint64_t seed,
                                           upcm_dataset** out);

/* Copies n x dim row-major points; the dataset has no ground truth. */
UPCM_API upcm_status upcm_dataset_from_points(const double* points, size_t n, size_t dim, upcm_dataset** out);

/* CSV plus optional `<stem>.truth.json` sidecar. */
UPCM_API upcm_status upcm_dataset_load(const char* path, upcm_dataset** out);
UPCM_API upcm_status upcm_dataset_save(const upcm_dataset* dataset, const char* path);

UPCM_API size_t upcm_dataset_size(const upcm_dataset* dataset);
UPCM_API size_t upcm_dataset_dim(const upcm_dataset* dataset);
/* Number of ground-truth centers, 0 when unknown. */
UPCM_API size_t upcm_dataset_truth_count(const upcm_dataset* dataset);
/* Copies size() x dim() values into `out`. */
UPCM_API upcm_status upcm_dataset_points(const upcm_dataset* dataset, double* out);
UPCM_API void upcm_dataset_free(upcm_dataset* dataset);

/* ---- single runs ------------------------------------------------------- */

typedef struct {
    upcm_algorithm algorithm;
    size_t m_ini;           /* initial cluster count (FCM c) */
    double alpha;           /* UPCM noise level, interpreted by cut_rule */
    double sigma_v;         /* UPCM bandwidth uncertainty */
    upcm_cut_rule cut_rule;
    double alpha_apcm;      /* APCM bandwidth scaling */
    double tol;             /* max prototype displacement at convergence */
    size_t max_iter;
    uint64_t seed;          /* FCM initialisation */
    double fcm_fuzzifier;
    double fcm_tol;
    size_t fcm_max_iter;
} upcm_config;

/* Fills the documented defaults: upcm, m_ini 10, alpha 0, sigma_v 0, direct,
 * alpha_apcm 1, tol 1e-4, max_iter 200, seed 0, fuzzifier 2, fcm_tol 1e-6,
 * fcm_max_iter 300. */
UPCM_API void upcm_config_init(upcm_config* config);

UPCM_API upcm_status upcm_cluster(const upcm_dataset* dataset, const upcm_config* config, upcm_model** out);

UPCM_API size_t upcm_model_cluster_count(const upcm_model* model);
UPCM_API size_t upcm_model_dim(const upcm_model* model);
UPCM_API size_t upcm_model_iterations(const upcm_model* model);
UPCM_API int upcm_model_converged(const upcm_model* model);
/* cluster_count() x dim() values. */
UPCM_API upcm_status upcm_model_prototypes(const upcm_model* model, double* out);
/* One label per point; -1 marks a point with no positive membership. */
UPCM_API upcm_status upcm_model_labels(const upcm_model* model, int* out);
/* Needs ground-truth centers on the dataset. */
UPCM_API upcm_status upcm_model_center_error(const upcm_model* model, const upcm_dataset* dataset, double* out);
/* Model JSON. Returned string is owned by the caller; release with upcm_string_free. */
UPCM_API upcm_status upcm_model_to_json(const upcm_model* model, int include_memberships, char** out);
UPCM_API void upcm_model_free(upcm_model* model);

UPCM_API void upcm_string_free(char* text);

/* ---- sweeps ------------------------------------------------------------ */

typedef struct {
    upcm_algorithm algorithm;  /* UPCM or APCM */
    size_t m_ini;
    upcm_cut_rule cut_rule;
    double tol;
    size_t max_iter;
    const double* alpha_values;
    size_t n_alpha;
    const double* sigma_v_values;
    size_t n_sigma_v;
    const uint64_t* seeds;
    size_t n_seeds;
    size_t jobs;
} upcm_sweep_spec;

/* Default axes for `algorithm` on `dataset`. Each buffer must hold at least
 * 32 values; the counts are written to n_alpha / n_sigma_v. */
UPCM_API upcm_status upcm_sweep_default_axes(const upcm_dataset* dataset, upcm_algorithm algorithm,
                                             double* alpha_values, size_t* n_alpha, double* sigma_v_values,
                                             size_t* n_sigma_v);

UPCM_API upcm_status upcm_sweep_run(const upcm_dataset* dataset, const upcm_sweep_spec* spec, upcm_sweep** out);
UPCM_API upcm_status upcm_sweep_load(const char* json_path, upcm_sweep** out);

typedef struct {
    double alpha;
    double sigma_v;
    uint64_t seed;
    size_t final_clusters;
    double center_error;  /* NaN for a failed cell */
    size_t iterations;
    int converged;
    int failed;
} upcm_sweep_cell;

UPCM_API size_t upcm_sweep_cell_count(const upcm_sweep* sweep);
UPCM_API upcm_status upcm_sweep_cell_at(const upcm_sweep* sweep, size_t index, upcm_sweep_cell* out);

/* Writes <prefix>.csv, <prefix>.heatmap.csv and <prefix>.json. */
UPCM_API upcm_status upcm_sweep_emit_report(const upcm_sweep* sweep, const char* prefix);
UPCM_API void upcm_sweep_free(upcm_sweep* sweep);

/* ---- fuzzy curves ------------------------------------------------------ */

/* Long-format CSV `sigma_v,x,membership` of marginal membership curves around
 * x0 with bandwidth v0, one curve per sigma value, steps + 1 samples over
 * [x_min, x_max]. Writes to stdout when path is NULL or "-". */
UPCM_API upcm_status upcm_marginal_curve_csv(double x0, double v0, const double* sigma_values, size_t n_sigma,
                                             double x_min, double x_max, size_t steps, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* UPCM_C_H */
