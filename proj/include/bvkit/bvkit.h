/* bvkit: Batalin-Vilkovisky data for polynomial actions, exact arithmetic.
 *
 * Objects are opaque handles owned by the caller and released with the matching
 * *_free function. Every call returns a status; on failure bvkit_last_error()
 * describes the problem (per thread, valid until the next failing call).
 * Strings returned through char** are released with bvkit_string_free().
 * JSON documents are UTF-8. */
#ifndef BVKIT_H
#define BVKIT_H

#include <stdint.h>

#if defined(BVKIT_BUILDING)
#define BVKIT_API __attribute__((visibility("default")))
#else
#define BVKIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bvkit_status {
    BVKIT_OK = 0,
    BVKIT_ERR_PARSE = 1,
    BVKIT_ERR_INVALID_ARGUMENT = 2,
    BVKIT_ERR_PRECONDITION = 3,
    BVKIT_ERR_LIFT = 4,
    BVKIT_ERR_CHECK_FAILED = 5,
    BVKIT_ERR_IO = 6,
    BVKIT_ERR_INTERNAL = 7
} bvkit_status;

typedef enum bvkit_order { BVKIT_ORDER_GREVLEX = 0, BVKIT_ORDER_LEX = 1 } bvkit_order;

typedef struct bvkit_problem bvkit_problem;
typedef struct bvkit_resolution bvkit_resolution;
typedef struct bvkit_solution bvkit_solution;

BVKIT_API const char* bvkit_version(void);
BVKIT_API const char* bvkit_last_error(void);
BVKIT_API void bvkit_string_free(char* s);

/* Problem files: "vars x y; S0 = ...;" or "dS0 = p, q;" plus "option key=value;". */
BVKIT_API bvkit_status bvkit_problem_parse(const char* text, bvkit_problem** out);
BVKIT_API bvkit_status bvkit_problem_to_json(const bvkit_problem* p, char** json);
/* Integer option from the file, or fallback when absent. */
BVKIT_API int bvkit_problem_option(const bvkit_problem* p, const char* key, int fallback);
/* The order named by "option order=...", grevlex when absent. */
BVKIT_API bvkit_order bvkit_problem_order(const bvkit_problem* p);
BVKIT_API void bvkit_problem_free(bvkit_problem* p);

/* Koszul-Tate resolution with exactness certified in degrees -1..-depth. */
BVKIT_API bvkit_status bvkit_resolution_build(const bvkit_problem* p, int depth, bvkit_resolution** out);
/* Re-checks acyclicity in degrees -1..-depth; *report gets {"ok","failed_degree","witness"}. */
BVKIT_API bvkit_status bvkit_resolution_check(const bvkit_resolution* r, int depth, char** report);
BVKIT_API bvkit_status bvkit_resolution_to_json(const bvkit_resolution* r, char** json);
BVKIT_API bvkit_status bvkit_resolution_from_json(const char* json, bvkit_resolution** out);
BVKIT_API void bvkit_resolution_free(bvkit_resolution* r);

/* Solves the master equation to order p_max (requires depth >= p_max). With
 * use_seed != 0 every lift is shifted by a seeded random exact term. */
BVKIT_API bvkit_status bvkit_solve(const bvkit_resolution* r, int p_max, int use_seed, uint64_t seed, bvkit_solution** out);
BVKIT_API bvkit_status bvkit_solution_to_json(const bvkit_solution* s, char** json);
BVKIT_API bvkit_status bvkit_solution_from_json(const char* json, bvkit_solution** out);
BVKIT_API void bvkit_solution_free(bvkit_solution* s);

/* Verification report at order p. BVKIT_OK is returned even when the check
 * fails; inspect the report. */
BVKIT_API bvkit_status bvkit_verify(const bvkit_solution* s, int p, char** report);
/* Gauge word u_1..u_m with exp(ad u_m)...exp(ad u_1) a = b mod F^{p_max+1}. The
 * report also carries whether transport was confirmed term by term. */
BVKIT_API bvkit_status bvkit_gauge(const bvkit_solution* a, const bvkit_solution* b, int p_max, char** report);

/* BRST cohomology reports {"p","bound","dim","basis","stable"}. */
BVKIT_API bvkit_status bvkit_brst_h0(const bvkit_problem* p, int bound, bvkit_order order, char** report);
BVKIT_API bvkit_status bvkit_brst_h1(const bvkit_problem* p, int bound, bvkit_order order, char** report);
/* Induced bracket of two invariants f, g (polynomial text); the report gives the
 * cochain on the symmetry generators and whether it is a coboundary at bound. */
BVKIT_API bvkit_status bvkit_brst_bracket(const bvkit_problem* p, const char* f, const char* g, int bound,
                                bvkit_order order, char** report);
BVKIT_API bvkit_status bvkit_brst_e2(const bvkit_solution* s, int p, int bound, bvkit_order order, char** report);
/* Generators of the symmetry module, relations and structure functions. */
BVKIT_API bvkit_status bvkit_symmetries(const bvkit_problem* p, char** json);

/* Example registry. */
BVKIT_API int bvkit_example_count(void);
BVKIT_API const char* bvkit_example_id(int i);
/* Runs all checks of an example; *report lists each check. Returns
 * BVKIT_ERR_CHECK_FAILED (with the report still filled) if any check fails. */
BVKIT_API bvkit_status bvkit_example_run(const char* id, char** report);
/* Problem text for single-action examples; BVKIT_ERR_INVALID_ARGUMENT otherwise. */
BVKIT_API bvkit_status bvkit_example_problem(const char* id, char** text);

#ifdef __cplusplus
}
#endif

#endif /* BVKIT_H */
