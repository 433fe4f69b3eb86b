/* C interface to the adversarial wiretap channel toolkit.
 *
 * Every function returns an awtc_status; on failure the message is available
 * from awtc_last_error() on the same thread until the next call. Handles are
 * opaque and owned by the caller, who releases them with the matching _free.
 * Words are packed into uint64_t with coordinate 1 in the least-significant
 * bit. Output paths may be NULL to skip that output.
 */
#ifndef AWTC_H
#define AWTC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(AWTC_BUILDING_LIBRARY)
#    define AWTC_API __declspec(dllexport)
#  else
#    define AWTC_API __declspec(dllimport)
#  endif
#else
#  define AWTC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum awtc_status {
  AWTC_OK = 0,
  AWTC_ERR_DOMAIN = 1,
  AWTC_ERR_CONFIG = 2,
  AWTC_ERR_RESOURCE = 3,
  AWTC_ERR_FORMAT = 4,
  AWTC_ERR_BUDGET = 5,
  AWTC_ERR_IO = 6,
  AWTC_ERR_NULL_ARGUMENT = 7,
  AWTC_ERR_INTERNAL = 8
} awtc_status;

AWTC_API const char* awtc_last_error(void);
AWTC_API const char* awtc_status_name(awtc_status status);
AWTC_API const char* awtc_version(void);

/* ---- bounds ------------------------------------------------------------ */

typedef struct awtc_bounds {
  double lower_raw;
  double lower;
  double upper;
  double p_star;
  double f_min;
  int zero_capacity;
} awtc_bounds;

AWTC_API awtc_status awtc_binary_entropy(double p, double* out);
AWTC_API awtc_status awtc_f_objective(double p, double rho_r, double rho_w, double* out);
AWTC_API awtc_status awtc_capacity_bounds(double rho_r, double rho_w, awtc_bounds* out);
/* Writes the grid CSV (header rho_r,rho_w,lower_raw,lower,upper,p_star,f_min,ratio). */
AWTC_API awtc_status awtc_bounds_grid_csv(const double* rho_w, size_t count, double rho_r_step,
                                          const char* path, size_t* rows);

/* ---- codes ------------------------------------------------------------- */

typedef struct awtc_code awtc_code;

typedef struct awtc_code_info {
  int n;
  int ell;
  size_t words;
  size_t messages;
  uint64_t seed;
} awtc_code_info;

/* 2^index_bits i.i.d. words of length n, binned into blocks of 2^ell. */
AWTC_API awtc_status awtc_code_sample(int n, int index_bits, int ell, uint64_t seed, awtc_code** out);
AWTC_API awtc_status awtc_code_from_words(int n, const uint64_t* words, size_t count, int ell, awtc_code** out);
AWTC_API awtc_status awtc_code_load(const char* path, awtc_code** out);
AWTC_API awtc_status awtc_code_save(const awtc_code* code, const char* path);
AWTC_API void awtc_code_free(awtc_code* code);

AWTC_API awtc_status awtc_code_get_info(const awtc_code* code, awtc_code_info* out);
AWTC_API awtc_status awtc_code_word(const awtc_code* code, size_t index, uint64_t* out);
AWTC_API awtc_status awtc_code_encode(const awtc_code* code, size_t message, size_t seed_r, uint64_t* out);
AWTC_API awtc_status awtc_code_decode(const awtc_code* code, uint64_t received, size_t* message);
AWTC_API awtc_status awtc_code_max_ball(const awtc_code* code, int radius, size_t* count, uint64_t* center);
AWTC_API awtc_status awtc_code_consistent_count(const awtc_code* code, uint64_t support_mask, uint64_t symbols,
                                                size_t* count);

/* ---- secrecy ----------------------------------------------------------- */

typedef struct awtc_secrecy_summary {
  double rate_bits;
  double message_bits;
  double delta;
  double eta;
  size_t l_max;
  double counting_bound;
  double sem_surrogate;
  int exact;
} awtc_secrecy_summary;

AWTC_API awtc_status awtc_equivocation(const awtc_code* code, uint64_t support_mask, double* bits);
/* sampled != 0 evaluates `samples` random supports drawn from `seed` instead
 * of all of them. Writes the metric,support,value,exact_flag CSV. */
AWTC_API awtc_status awtc_secrecy_report_csv(const awtc_code* code, int read_budget, int sampled, size_t samples,
                                             uint64_t seed, const char* csv_path, awtc_secrecy_summary* out);

/* ---- experiments ------------------------------------------------------- */

typedef struct awtc_config awtc_config;

typedef struct awtc_estimate {
  size_t trials;
  size_t failures;
  double error_rate;
  double ci95;
  double ci_low;
  double ci_high;
} awtc_estimate;

typedef struct awtc_reduction {
  awtc_estimate random_wtc;
  awtc_estimate awtc;
  double flip_prob;
  double erase_prob;
  double eta_bec;
  double eta_awtc;
  int eta_awtc_exact;
  double message_rate;
} awtc_reduction;

AWTC_API awtc_status awtc_config_new(awtc_config** out);
AWTC_API void awtc_config_free(awtc_config* config);
/* Keys: n rho_r rho_w epsilon ell trials seed adversary max_enum max_n
 * max_budget mode xi interval threads samples secrecy_mode codebook. */
AWTC_API awtc_status awtc_config_set(awtc_config* config, const char* key, const char* value);
AWTC_API awtc_status awtc_config_load(awtc_config* config, const char* path);
AWTC_API awtc_status awtc_config_validate(const awtc_config* config);

/* Loads the config's codebook or samples one from its seed. */
AWTC_API awtc_status awtc_build_code(const awtc_config* config, awtc_code** out);

/* `code` may be NULL to build it from the config. */
AWTC_API awtc_status awtc_run_reliability(const awtc_config* config, const awtc_code* code, const char* csv_path,
                                          const char* jsonl_path, awtc_estimate* out);
AWTC_API awtc_status awtc_run_reduction(const awtc_config* config, const awtc_code* code, const char* csv_path,
                                        const char* jsonl_path, awtc_reduction* out);
AWTC_API awtc_status awtc_run_conflicts(const awtc_config* config, const awtc_code* code, const char* csv_path,
                                        size_t* total_conflicts);
AWTC_API awtc_status awtc_event_e0(const awtc_code* code, int read_budget, double epsilon, size_t samples,
                                   uint64_t seed, double* pass_fraction);

#ifdef __cplusplus
}
#endif

#endif /* AWTC_H */
