/* Sparse matrix coding link-level simulation library: C interface.
 *
 * Every function returns an smc_status; outputs are written through
 * pointers. On failure smc_last_error() carries a message for the calling
 * thread. Handles are opaque and freed with their _destroy function.
 */
#ifndef SMC_H
#define SMC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum smc_status {
  SMC_OK = 0,
  SMC_ERR_INVALID_ARGUMENT = 1,
  SMC_ERR_OUT_OF_RANGE = 2,
  SMC_ERR_DOMAIN = 3,
  SMC_ERR_OVERFLOW = 4,
  SMC_ERR_GUARD = 5, /* refused: candidate set over the enumeration guard */
  SMC_ERR_CONFIG = 6,
  SMC_ERR_IO = 7,
  SMC_ERR_VALIDATION_FAILED = 8,
  SMC_ERR_INTERNAL = 9
} smc_status;

const char* smc_status_name(smc_status status);

/* Message describing the most recent failure on this thread. */
const char* smc_last_error(void);

typedef enum smc_scheme {
  SMC_SCHEME_SVC = 0,
  SMC_SCHEME_SMC = 1,
  SMC_SCHEME_SMC_DUAL = 2,
  SMC_SCHEME_SMC_FUSED = 3
} smc_scheme;

typedef enum smc_bound_variant {
  SMC_BOUND_EXACT_EXPECTATION = 0, /* keeps the +1 of E[exp(-ax)] = (1+a)^-m */
  SMC_BOUND_PAPER_LITERAL = 1      /* published closed form, clamped */
} smc_bound_variant;

/* ---------- spreading dictionary ---------- */

typedef struct smc_dictionary smc_dictionary;

/* rows x cols, entries +-1/sqrt(rows); bit-identical for equal seeds. */
smc_status smc_dictionary_create_bernoulli(int32_t rows, int32_t cols, uint64_t seed,
                                           smc_dictionary** out);
void smc_dictionary_destroy(smc_dictionary* d);
int32_t smc_dictionary_rows(const smc_dictionary* d);
int32_t smc_dictionary_cols(const smc_dictionary* d);

/* Maximum absolute correlation between distinct columns. */
smc_status smc_dictionary_coherence(const smc_dictionary* d, double* mu);

/* Row-major copy of the entries; len must be >= rows*cols. */
smc_status smc_dictionary_entries(const smc_dictionary* d, double* buf, size_t len);

/* ---------- payload / support mapping ---------- */

/* Per-user capacity: floor(log2 C(n, k)). */
smc_status smc_payload_bits(int32_t n, int32_t k, int32_t* bits);

/* Lexicographic unranking; support must hold k entries. */
smc_status smc_rank_to_subset(uint64_t rank, int32_t n, int32_t k, uint32_t* support);
smc_status smc_subset_to_rank(const uint32_t* support, int32_t n, int32_t k, uint64_t* rank);

/* ---------- reliability bound and efficiency ---------- */

typedef struct smc_bound_params {
  int32_t m;
  int32_t n;
  int32_t k;
  double mu;     /* dictionary coherence, in [0, 1) */
  double s_sum;  /* sum of sparse values; equals k for unit values */
  double sigma2; /* noise variance per received entry */
  smc_bound_variant variant;
} smc_bound_params;

smc_status smc_chi_sq_exp(double alpha, int32_t m, double* out);
smc_status smc_block_success_prob(const smc_bound_params* p, double* out);
smc_status smc_bler_upper_bound(const smc_bound_params* p, double* out);

/* Noise variance for a per-received-entry SNR: P_rx = k/m^2 for smc
 * schemes, k/m for svc, with +-1/sqrt(m) dictionaries. */
smc_status smc_snr_to_sigma2(double snr_db, int32_t m, int32_t k, smc_scheme scheme,
                             double* sigma2);

smc_status smc_efficiency(int32_t n, int32_t k, int32_t m, smc_scheme scheme,
                          int32_t* payload_bits, int32_t* channel_uses, double* bits_per_use);

/* ---------- Monte Carlo simulation ---------- */

typedef struct smc_sim_config smc_sim_config;

/* Flat key = value text; '#' starts a comment. On SMC_ERR_CONFIG the error
 * message lists every problem found. */
smc_status smc_sim_config_parse(const char* text, smc_sim_config** out);
smc_status smc_sim_config_load(const char* path, smc_sim_config** out);
void smc_sim_config_destroy(smc_sim_config* cfg);

typedef enum smc_format { SMC_FORMAT_CSV = 0, SMC_FORMAT_JSON = 1 } smc_format;

/* Runs the sweep and returns the report as a string (free with
 * smc_string_free). workers <= 0 selects the hardware concurrency; the
 * output is bit-identical for every worker count. */
smc_status smc_simulate(const smc_sim_config* cfg, int32_t workers, smc_format format,
                        char** report);

/* ---------- validation suite ---------- */

/* Runs the algebraic/statistical identity checks with fixed seeds. Returns
 * SMC_OK if all pass, SMC_ERR_VALIDATION_FAILED otherwise; *report carries
 * one line per check either way. */
smc_status smc_validate(char** report);

/* ---------- single-frame round trip ---------- */

/* Encode -> noiseless Rayleigh transmission -> primary and dual decode.
 * Payload hex strings may be NULL to draw payloads from the seed. *ok is
 * set to 1 when both paths recovered both payloads (may be NULL). */
smc_status smc_roundtrip(int32_t m, int32_t n, int32_t k, uint64_t seed,
                         const char* payload1_hex, const char* payload2_hex, int32_t* ok,
                         char** report);

void smc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SMC_H */
