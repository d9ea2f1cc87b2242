/* Group-invariant random feature maps: C API for the shared library.
 *
 * All functions return GIR_OK on success; on failure they return an error
 * code and leave a thread-local message readable via gir_last_error().
 * Handles are opaque and must be released with the matching *_free call.
 */
#ifndef GIR_GIR_H
#define GIR_GIR_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gir_status {
  GIR_OK = 0,
  GIR_ERR_ARGUMENT = 1,
  GIR_ERR_CAPACITY = 2,
  GIR_ERR_IO = 3,
  GIR_ERR_CONFIG = 4,
  GIR_ERR_RUNTIME = 5
} gir_status;

/* Message for the most recent failure on this thread; empty string if none. */
const char* gir_last_error(void);

/* ---- groups ---- */

typedef struct gir_group gir_group;

gir_status gir_group_block_permutation(int num_blocks, int block_size,
                                       gir_group** out);
gir_status gir_group_cyclic_shift(int dimension, gir_group** out);
gir_status gir_group_image_euclidean(int rows, int cols, int max_shift,
                                     double angle_range_deg,
                                     double angle_step_deg, gir_group** out);
void gir_group_free(gir_group* group);

int gir_group_dimension(const gir_group* group);
int64_t gir_group_order(const gir_group* group);
int gir_group_exactly_unitary(const gir_group* group);
int64_t gir_group_identity(const gir_group* group);

gir_status gir_group_apply(const gir_group* group, int64_t element,
                           const double* x, int d, double* out);
/* count uniform draws with replacement into out_elements[count]. */
gir_status gir_group_sample(const gir_group* group, int64_t count,
                            uint64_t seed, int64_t* out_elements);

/* ---- templates and projection tables ---- */

typedef struct gir_bank gir_bank;
typedef struct gir_table gir_table;

enum { GIR_TEMPLATES_GAUSSIAN = 0, GIR_TEMPLATES_SPHERE = 1 };

gir_status gir_bank_create(int d, int m, double epsilon, int kind,
                           uint64_t seed, gir_bank** out);
void gir_bank_free(gir_bank* bank);
double gir_bank_s(const gir_bank* bank);
gir_status gir_bank_template(const gir_bank* bank, int j, double* out /* d */);

/* elements may be NULL with count 0 for full enumeration. */
gir_status gir_table_build(const gir_bank* bank, const gir_group* group,
                           const int64_t* elements, int64_t count,
                           gir_table** out);
void gir_table_free(gir_table* table);
int64_t gir_table_feature_length(const gir_table* table, int bins);

/* ---- features and kernels ---- */

gir_status gir_features(const gir_table* table, const double* x, int d,
                        int bins, int relaxed,
                        double* out /* feature_length */);
gir_status gir_sampled_ks(const gir_table* table, const double* x,
                          const double* z, int d, int relaxed,
                          double* out_value, double* out_std_error);

enum { GIR_BASE_LINEAR = 0, GIR_BASE_RBF = 1 };

gir_status gir_exact_haar(const gir_group* group, const double* x,
                          const double* z, int d, int base, double gamma,
                          double* out);
gir_status gir_orbit_distance(const gir_group* group, const double* x,
                              const double* z, int d, double* out);
gir_status gir_asymptotic_ks(const gir_group* group, const double* x,
                             const double* z, int d, double epsilon,
                             double* out);

/* ---- closed-form bounds ---- */

gir_status gir_delta_bounds(int d, double epsilon, double* delta1,
                            double* delta2);
gir_status gir_clark_max_moments(double mu_x, double mu_y, double sigma_x,
                                 double sigma_y, double rho, double* mean,
                                 double* second_moment, double* variance);
gir_status gir_chi2_tail_upper(int k, double epsilon, double* out);
gir_status gir_chi2_tail_lower(int k, double epsilon, double* out);
gir_status gir_dkw_bound(int64_t nsamples, double gamma, double* out);
gir_status gir_theorem2_sample_sizes(int64_t npoints, double eps0, double eps1,
                                     double eps2, double delta1, double delta2,
                                     double c1, double c2, int64_t* bins,
                                     int64_t* templates, int64_t* group);
gir_status gir_theorem3_bound(int64_t npoints, int64_t templates,
                              int64_t group, int64_t bins, double lipschitz,
                              double weight_bound, double loss_at_zero,
                              double s, double delta, double* out);

/* ---- experiments ---- */

/* Validates config text; on GIR_ERR_CONFIG the message names the bad line. */
gir_status gir_config_validate(const char* text);
/* Parses and runs; output paths come from the config itself. */
gir_status gir_experiment_run(const char* text, int workers);
/* Writes the generated dataset as CSV (label, orbit id, core flag, coords). */
gir_status gir_gen_xperm_csv(uint64_t seed, const char* out_path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GIR_GIR_H */
