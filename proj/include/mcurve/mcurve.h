#ifndef MCURVE_MCURVE_H
#define MCURVE_MCURVE_H

/* C interface to the mirror-curve library.
 *
 * Every call returns an mc_status. On failure the message of the last error
 * raised on the calling thread is available from mc_last_error(). Reports come
 * back as JSON text allocated by the library; release them with mc_string_free.
 * Floats in reports carry 17 significant digits. */

#include <stddef.h>

#if defined(__GNUC__)
#define MC_API __attribute__((visibility("default")))
#else
#define MC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mc_status {
  MC_OK = 0,
  MC_INVALID_ARGUMENT,
  MC_NON_CONVEX,
  MC_ORIGIN_NOT_INTERIOR,
  MC_INCONSISTENT_GENUS,
  MC_NOT_TEMPERED,
  MC_NOT_REFLEXIVE,
  MC_NON_POSITIVE_COEFFICIENTS,
  MC_OUTSIDE_DOMAIN,
  MC_INSUFFICIENT_ORDER,
  MC_NO_OPERATOR_FOUND,
  MC_QUADRATURE_FAILURE,
  MC_BRACKET_FAILURE,
  MC_OVERFLOW,
  MC_NOT_CONVERGED,
  MC_TAIL_DOMINATES,
  MC_PATH_CROSSES_BRANCH_POINT,
  MC_POLE_AT_ONE_OR_ZERO,
  MC_PARAMETRIZATION_FAILURE,
  MC_TAIL_ESTIMATE_UNRELIABLE,
  MC_IO,
  MC_INTERNAL
} mc_status;

typedef struct mc_family mc_family;
typedef struct mc_normal mc_normal;

MC_API const char* mc_status_name(mc_status s);
MC_API const char* mc_last_error(void);
MC_API const char* mc_version(void);
MC_API void mc_string_free(char* s);

/* Families: a built-in id ("local_p2", "local_p1xp1", "local_f1", "local_f2",
 * "gg:<g>", "m_n:<m>,<n>") or a JSON polygon description. */
MC_API mc_status mc_family_builtin(const char* id, mc_family** out);
MC_API mc_status mc_family_from_json(const char* json, mc_family** out);
MC_API void mc_family_free(mc_family* f);
MC_API mc_status mc_family_genus(const mc_family* f, int* genus);
/* Canonical text form, independent of the id; suitable as a cache key. */
MC_API mc_status mc_family_canonical(const mc_family* f, char** out);
MC_API mc_status mc_builtin_families(char** json);

MC_API mc_status mc_polygon_report(const mc_family* f, char** json);
/* Exact genus-one data at series order `order`, GW invariants up to kmax. */
MC_API mc_status mc_periods_report(const mc_family* f, unsigned order, unsigned kmax, char** json);
MC_API mc_status mc_gw_table(const mc_family* f, unsigned kmax, char** json);

/* Normal function nu(a), V(a) of a genus-one family. */
MC_API mc_status mc_normal_create(const mc_family* f, unsigned order, unsigned bits, mc_normal** out);
MC_API void mc_normal_free(mc_normal* nf);
/* Fails with MC_INSUFFICIENT_ORDER when the series tail bound exceeds tol. */
MC_API mc_status mc_normal_nu(const mc_normal* nf, double a, double tol, double* nu, double* error);
MC_API mc_status mc_normal_edge(const mc_normal* nf, double* edge);
MC_API mc_status mc_normal_evaluate(const mc_normal* nf, double a, char** json);
MC_API mc_status mc_quantize(const mc_normal* nf, int levels, double tol, char** json);

/* Lowest `levels` eigenvalues of the quantized curve on the given basis schedule. */
MC_API mc_status mc_spectrum(const mc_family* f, int levels, const size_t* schedule, size_t schedule_len, double rel_tol,
                             size_t cap, double hbar, char** json);

MC_API mc_status mc_conifold_report(int g, unsigned rmax, char** json);
MC_API mc_status mc_dilog_identity(int g, int j, int degree_max, int with_increments, char** json);
MC_API mc_status mc_bloch_wigner(double re, double im, double* value);

MC_API mc_status mc_eigenfunction(const mc_family* f, double a, double r_min, double r_max, double r_step, char** json);

#ifdef __cplusplus
}
#endif

#endif
