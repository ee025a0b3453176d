#ifndef NCTRACE_NCTRACE_H
#define NCTRACE_NCTRACE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NCTRACE_BUILDING_LIBRARY)
#    define NCT_API __declspec(dllexport)
#  else
#    define NCT_API __declspec(dllimport)
#  endif
#else
#  define NCT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a status. On failure, nct_last_error() holds a
 * message for the calling thread until its next failing call. */
typedef enum nct_status {
  NCT_OK = 0,
  NCT_ERR_INVALID_ARGUMENT = 1,
  NCT_ERR_PARSE = 2,
  NCT_ERR_NOT_SYMMETRIC = 3,
  NCT_ERR_DIMENSION = 4,
  NCT_ERR_NOT_HERMITIAN = 5,
  NCT_ERR_DEGREE = 6,
  NCT_ERR_INCONSISTENT = 7,
  NCT_ERR_NOT_PSD = 8,
  NCT_ERR_SOLVER = 9,
  NCT_ERR_IO = 10,
  NCT_ERR_INTERNAL = 11
} nct_status;

typedef enum nct_certify_outcome {
  NCT_CERTIFIED = 0,
  NCT_INFEASIBLE = 1,
  NCT_SOLVER_FAILURE = 2
} nct_certify_outcome;

typedef struct nct_poly nct_poly;
typedef struct nct_tuple nct_tuple;
typedef struct nct_moments nct_moments;
typedef struct nct_gns nct_gns;

NCT_API const char* nct_version(void);
NCT_API const char* nct_status_string(nct_status status);
NCT_API const char* nct_last_error(void);
/* Releases strings returned through char** out-parameters. */
NCT_API void nct_string_free(char* s);

/* Polynomials. nvars <= 0 infers the count from the largest index used. */
NCT_API nct_status nct_poly_parse(const char* text, int nvars, nct_poly** out);
NCT_API void nct_poly_free(nct_poly* p);
NCT_API int nct_poly_nvars(const nct_poly* p);
NCT_API int nct_poly_degree(const nct_poly* p);
NCT_API nct_status nct_poly_format(const nct_poly* p, char** out);
NCT_API nct_status nct_poly_star(const nct_poly* a, const nct_poly* b, nct_poly** out);
NCT_API nct_status nct_poly_involute(const nct_poly* p, nct_poly** out);
NCT_API nct_status nct_poly_cyclic_reduce(const nct_poly* p, nct_poly** out);
NCT_API nct_status nct_poly_r_norm(const nct_poly* p, double radius, double* out);
NCT_API nct_status nct_poly_is_symmetric(const nct_poly* p, double tol, int* out);
/* Normalized trace of p evaluated at the tuple. */
NCT_API nct_status nct_poly_trace(const nct_poly* p, const nct_tuple* x, double* re, double* im);

/* Matrix tuples in the {"n","N","matrices"} JSON layout. */
NCT_API nct_status nct_tuple_from_json(const char* json, nct_tuple** out);
NCT_API nct_status nct_tuple_to_json(const nct_tuple* x, char** out);
NCT_API void nct_tuple_free(nct_tuple* x);
NCT_API int nct_tuple_nvars(const nct_tuple* x);
NCT_API int nct_tuple_size(const nct_tuple* x);
NCT_API double nct_tuple_max_norm(const nct_tuple* x);

/* Moment sequences. */
NCT_API nct_status nct_moments_from_tuple(const nct_tuple* x, int max_degree, nct_moments** out);
NCT_API nct_status nct_moments_from_json(const char* json, nct_moments** out);
NCT_API nct_status nct_moments_to_json(const nct_moments* t, char** out);
NCT_API void nct_moments_free(nct_moments* t);
NCT_API int nct_moments_max_degree(const nct_moments* t);
/* *pass is 1 when cyclic and conjugate symmetry hold at tol. */
NCT_API nct_status nct_moments_check_w(const nct_moments* t, double tol, int* pass, char** report_json);
NCT_API nct_status nct_moments_psd(const nct_moments* t, int degree, double tol, int* psd, double* min_eigenvalue);
NCT_API nct_status nct_pair(const nct_poly* p, const nct_moments* t, double* re, double* im);

/* Sums of hermitian squares. degree < 0 selects ceil(deg p / 2). The JSON is
 * the certificate when *outcome is NCT_CERTIFIED, a report otherwise. */
NCT_API nct_status nct_certify(const nct_poly* p, int degree, double tol, int* outcome, char** json);
NCT_API nct_status nct_verify_certificate_json(const nct_poly* p, const char* certificate_json, double* residual);
/* *found is 1 and *json holds the witness when the optimum is below -tol;
 * otherwise *json is NULL. */
NCT_API nct_status nct_dual_witness(const nct_poly* p, int degree, double radius, double tol, int* found,
                                    double* optimum, char** json);
NCT_API nct_status nct_falsify(const nct_poly* p, long trials, int size, double radius, uint64_t seed, int* found,
                               double* trace, char** json);

/* Truncated GNS models. rank_tol <= 0 selects the default 1e-8. */
NCT_API nct_status nct_gns_build(const nct_moments* t, int degree, double rank_tol, nct_gns** out);
NCT_API void nct_gns_free(nct_gns* m);
NCT_API int nct_gns_rank(const nct_gns* m);
NCT_API nct_status nct_gns_verify_moments(const nct_gns* m, const nct_moments* t, int deg_check, double* error);
NCT_API nct_status nct_gns_verify_trace(const nct_gns* m, const nct_moments* t, int deg_check, double* error);
/* exp(i t y_j) as rank*rank interleaved (re, im) pairs, row-major; len must
 * be at least 2 * rank * rank. */
NCT_API nct_status nct_gns_unitary(const nct_gns* m, int j, double t, double* buffer, size_t len);
NCT_API nct_status nct_gns_norm_check(const nct_gns* m, const nct_moments* t, double radius, int* pass,
                                      char** report_json);
NCT_API nct_status nct_gns_to_json(const nct_gns* m, char** out);
/* Runs every model check (moments and trace property up to 2d, group law and
 * unitarity on a fixed (t, s) grid, norm bounds at radius) and reports them
 * together with the model. *pass is 1 when all hold. */
NCT_API nct_status nct_gns_check_json(const nct_gns* m, const nct_moments* t, double radius, int* pass, char** json);

#ifdef __cplusplus
}
#endif

#endif
