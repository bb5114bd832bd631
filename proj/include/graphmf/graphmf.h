#ifndef GRAPHMF_GRAPHMF_H
#define GRAPHMF_GRAPHMF_H

#include <stddef.h>

#if defined(_WIN32)
#define GM_API __declspec(dllexport)
#else
#define GM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct gm_manifold gm_manifold;

typedef enum gm_status {
  GM_OK = 0,
  GM_ERR_INPUT = 1,
  GM_ERR_INTERNAL = 2,
  GM_ERR_UNSUPPORTED = 3
} gm_status;

/* Strings returned through char** out-parameters are owned by the caller and
   released with gm_string_free. Results are UTF-8 JSON documents. */

GM_API const char* gm_version(void);
/* Message of the last failed call on this thread; empty when none. */
GM_API const char* gm_last_error(void);
GM_API void gm_string_free(char* s);

GM_API gm_status gm_manifold_from_json(const char* json, gm_manifold** out);
GM_API gm_status gm_manifold_from_file(const char* path, gm_manifold** out);
GM_API void gm_manifold_free(gm_manifold* m);
GM_API gm_status gm_manifold_to_json(const gm_manifold* m, char** out);
GM_API size_t gm_manifold_dimension(const gm_manifold* m);
GM_API size_t gm_piece_count(const gm_manifold* m);
GM_API size_t gm_gluing_count(const gm_manifold* m);
GM_API gm_status gm_is_irreducible(const gm_manifold* m, int* out);

/* Structural validation; *valid is 1 or 0 and *report lists the violations. */
GM_API gm_status gm_validate_json(const char* json, int* valid, char** report);

GM_API gm_status gm_check(const gm_manifold* m, char** out);
GM_API gm_status gm_classify(const gm_manifold* m, char** out);
GM_API gm_status gm_acylindricity(const gm_manifold* m, size_t max_len, char** out);
/* path_json: array of "g1+" / "g1-" strings or {"traversal": "g1+", "token": 1} objects. */
GM_API gm_status gm_path_fix_lattice(const gm_manifold* m, const char* path_json, char** out);
/* h_json: integer vector of length n-1 in the wall's from-frame. */
GM_API gm_status gm_dehn_twist(const gm_manifold* m, const char* wall, const char* h_json, char** out);

/* patterns_json: an array of square matrices (all pairs compared) or {"P": ..., "P_prime": ...}. */
GM_API gm_status gm_equiv(const gm_manifold* pregraph, const char* edge, const char* patterns_json, char** out);
GM_API gm_status gm_generate(const gm_manifold* pregraph, const char* edge, size_t count, char** out);
GM_API gm_status gm_invariant(const gm_manifold* a, const gm_manifold* b, char** out);

/* cycle_json: array of "g1+" / "g1-" strings. */
GM_API gm_status gm_monodromy(const gm_manifold* m, const char* cycle_json, char** out);
/* kind: "monodromy", "euler_class", "twisted_double" or "all"; max_cycle_len 0 uses the default. */
GM_API gm_status gm_obstruct(const gm_manifold* m, const char* kind, size_t max_cycle_len, char** out);
/* m may be NULL; when given, monodromy cycles are recomputed against it. */
GM_API gm_status gm_verify_certificate(const char* certificate_json, const gm_manifold* m, int* valid,
                                       char** reason);

/* lambda, C, K: decimal integer strings. */
GM_API gm_status gm_dehn(const gm_manifold* m, const char* lambda, const char* C, const char* K, char** out);

GM_API gm_status gm_sha256_hex(const void* data, size_t len, char** out);

#ifdef __cplusplus
}
#endif

#endif
