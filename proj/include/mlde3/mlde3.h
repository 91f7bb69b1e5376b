#ifndef MLDE3_H
#define MLDE3_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define MLDE3_API __attribute__((visibility("default")))
#else
#define MLDE3_API
#endif

/* Rationals cross the boundary as "n" or "n/d" strings. Every char** output
 * is allocated by the library and released with mlde3_string_free. */

typedef enum mlde3_status {
    MLDE3_OK = 0,
    MLDE3_E_INVALID_ARGUMENT = 1,
    MLDE3_E_PRECONDITION = 2,
    MLDE3_E_BEYOND_ORDER = 3,
    MLDE3_E_RESONANT = 4,
    MLDE3_E_PRIME_UNUSABLE = 5,
    MLDE3_E_NUMERICAL = 6,
    MLDE3_E_IO = 7,
    MLDE3_E_INTERNAL = 8,
    MLDE3_E_NULL_ARGUMENT = 9
} mlde3_status;

typedef enum mlde3_format { MLDE3_FORMAT_CSV = 0, MLDE3_FORMAT_JSON = 1, MLDE3_FORMAT_MARKDOWN = 2 } mlde3_format;

typedef enum mlde3_method { MLDE3_METHOD_HYPERGEOMETRIC = 0, MLDE3_METHOD_FROBENIUS = 1 } mlde3_method;

/* Message of the last failed call on this thread; never NULL. */
MLDE3_API const char* mlde3_last_error(void);
MLDE3_API const char* mlde3_status_name(mlde3_status s);
MLDE3_API void mlde3_string_free(char* s);
MLDE3_API const char* mlde3_version(void);

/* Directory holding the golden tables; NULL restores the default. */
MLDE3_API mlde3_status mlde3_set_data_dir(const char* dir);

/* ---- character vectors ---- */

typedef struct mlde3_characters mlde3_characters;

/* A1/A2 may be NULL for 1. `order` coefficients per component. */
MLDE3_API mlde3_status mlde3_characters_new(const char* h1, const char* h2, const char* A1, const char* A2, size_t order,
                                            mlde3_method method, mlde3_characters** out);
MLDE3_API void mlde3_characters_free(mlde3_characters* c);
MLDE3_API mlde3_status mlde3_characters_coefficient(const mlde3_characters* c, int component, size_t n, char** out);
/* Leading q-exponent of a component. */
MLDE3_API mlde3_status mlde3_characters_exponent(const mlde3_characters* c, int component, char** out);
MLDE3_API mlde3_status mlde3_characters_central_charge(const mlde3_characters* c, char** out);
MLDE3_API mlde3_status mlde3_characters_json(const mlde3_characters* c, char** out);

/* ---- elliptic surface ---- */

MLDE3_API mlde3_status mlde3_fiber(const char* m, unsigned N, mlde3_format format, char** out);
MLDE3_API mlde3_status mlde3_am_count(const char* m, unsigned N, size_t* count, int* within_bound);
MLDE3_API mlde3_status mlde3_weierstrass_json(const char* m, char** out);

/* ---- sieve ---- */

MLDE3_API mlde3_status mlde3_scan_json(const char* h1, const char* h2, size_t order, char** out);
MLDE3_API mlde3_status mlde3_witness_beta(long beta, uint64_t* prime, size_t* index);

/* ---- pipeline ---- */

typedef struct mlde3_options mlde3_options;
typedef struct mlde3_report mlde3_report;

MLDE3_API mlde3_status mlde3_options_new(mlde3_options** out);
MLDE3_API void mlde3_options_free(mlde3_options* o);
/* Keys: order, trim_order, precision, terms, seed, q4_max_m, beta_max,
 * y_half_max_s, witness_prime_cap, threads, trim (0/1). */
MLDE3_API mlde3_status mlde3_options_set(mlde3_options* o, const char* key, long long value);
/* Comma-separated subset of 5,7,16. */
MLDE3_API mlde3_status mlde3_options_set_denominators(mlde3_options* o, const char* list);

MLDE3_API mlde3_status mlde3_classify(const mlde3_options* o, mlde3_report** out);
MLDE3_API void mlde3_report_free(mlde3_report* r);
/* Tables: full57, full2, useries, final, verdicts. */
MLDE3_API mlde3_status mlde3_report_table(const mlde3_report* r, const char* table, mlde3_format format, char** out);
MLDE3_API mlde3_status mlde3_report_json(const mlde3_report* r, char** out);
/* One line per mismatch against the golden tables; *count = 0 when all match. */
MLDE3_API mlde3_status mlde3_report_golden_check(const mlde3_report* r, size_t* count, char** text);

/* ---- S-matrix ---- */

/* Extraction, symmetrization and, when accepted, the folded S and the Verlinde check. */
MLDE3_API mlde3_status mlde3_smatrix_json(const char* h1, const char* h2, long precision, size_t terms, unsigned seed,
                                          char** out);
/* *verdict is the symmetrize status name; A1/A2 are set only when it is "accepted". */
MLDE3_API mlde3_status mlde3_normalization(const char* h1, const char* h2, long precision, char** A1, char** A2,
                                           char** verdict);
MLDE3_API mlde3_status mlde3_glue_json(int p, size_t order, char** out);

/* ---- Lie data ---- */

MLDE3_API mlde3_status mlde3_lie_dim_rank(const char* type, unsigned long* dim, unsigned* rank);
MLDE3_API mlde3_status mlde3_lie_theta_count(const char* type, unsigned long* n);
MLDE3_API mlde3_status mlde3_lie_dim_weight2(const char* type, unsigned level, unsigned long* dim);
/* total_rank / max_rank < 0 mean unconstrained; forbidden is a comma list or NULL. */
MLDE3_API mlde3_status mlde3_lie_levi_search(unsigned long target_dim, long total_rank, long max_rank,
                                             int allow_abelian, const char* forbidden, char** out_json);
MLDE3_API mlde3_status mlde3_lie_table_markdown(unsigned max_rank, char** out);

/* ---- primes ---- */

/* c_pi < 0 / x_pi == 0 leave the constants unset (only modulus 30 has defaults). */
MLDE3_API mlde3_status mlde3_primes_verify(uint64_t modulus, const char* ratio, uint64_t x_min, uint64_t x_max,
                                           unsigned threads, int* pass, char** certificate_json);
MLDE3_API mlde3_status mlde3_primes_bound(double X, uint64_t modulus, const char* ratio, double c_pi, uint64_t x_pi,
                                          double* out);

#ifdef __cplusplus
}
#endif

#endif
