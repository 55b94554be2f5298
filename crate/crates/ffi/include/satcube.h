/* C ABI for the satcube library. Generated by cbindgen; do not edit. */

#ifndef SATCUBE_H
#define SATCUBE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/* Opaque handles. Created and freed by this library only. */
typedef struct satcube_formula satcube_formula;
typedef struct satcube_solution_set satcube_solution_set;

// Status codes returned by every fallible `satcube_*` call.
typedef enum satcube_status {
  SATCUBE_OK = 0,
  SATCUBE_ERR_NULL_POINTER = 1,
  SATCUBE_ERR_INVALID_ARGUMENT = 2,
  SATCUBE_ERR_DUPLICATE_VARIABLE = 3,
  SATCUBE_ERR_CAPACITY_EXCEEDED = 4,
  SATCUBE_ERR_CAP_EXCEEDED = 5,
  SATCUBE_ERR_PARSE = 6,
  SATCUBE_ERR_EMPTY_SOLUTION_SPACE = 7,
  SATCUBE_ERR_UNSUPPORTED = 8,
  SATCUBE_ERR_INTERNAL = 9,
} satcube_status;

// Solver outcome values written by `satcube_solve`.
typedef enum satcube_solve_status {
  SATCUBE_SOLVE_SAT = 10,
  SATCUBE_SOLVE_UNSAT = 20,
  SATCUBE_SOLVE_BUDGET_EXHAUSTED = 0,
} satcube_solve_status;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string. Do not free.
const char *satcube_version(void);

// Message for the most recent error on this thread, or NULL if none.
// Valid until the next failing call on the same thread. Do not free.
const char *satcube_last_error_message(void);

// Release a string returned through a `char **` out-parameter.
void satcube_string_free(char *s);

// Seeded random instance. `mode` 0 = with replacement, 1 = unique clauses.
enum satcube_status satcube_formula_random(uint32_t n_vars,
                                           uint64_t n_clauses,
                                           int32_t mode,
                                           uint64_t seed,
                                           satcube_formula **out);

// Parse DIMACS text (NUL-terminated).
enum satcube_status satcube_formula_parse_dimacs(const char *text, satcube_formula **out);

// Serialize a formula as DIMACS into a newly allocated string.
enum satcube_status satcube_formula_to_dimacs(const satcube_formula *f, char **out);

// Number of variables; 0 for a NULL handle.
uint32_t satcube_formula_n_vars(const satcube_formula *f);

// Number of clauses; 0 for a NULL handle.
uint64_t satcube_formula_n_clauses(const satcube_formula *f);

void satcube_formula_free(satcube_formula *f);

// Exhaustively enumerate the solution set (refuses n_vars > cap; the cap
// itself is limited to 26).
enum satcube_status satcube_enumerate(const satcube_formula *f,
                                      uint32_t cap,
                                      satcube_solution_set **out);

// |S|; 0 for a NULL handle.
uint64_t satcube_solution_set_count(const satcube_solution_set *s);

// 1 if the assignment index is a valid solution, else 0.
int32_t satcube_solution_set_contains(const satcube_solution_set *s, uint64_t idx);

void satcube_solution_set_free(satcube_solution_set *s);

// Cluster / frozen-variable report as a JSON string (see the library docs
// for the schema).
enum satcube_status satcube_topology_report_json(const satcube_formula *f,
                                                 uint32_t cap,
                                                 char **out);

// Chronological DFS. `var_order` 0 = static ascending, 1 = seeded random;
// `value_order` 0 = zero first, 1 = one first, 2 = seeded random;
// `node_budget` 0 means unbounded. On success writes the solve status and,
// for SAT, the model assignment index through `model_out` (left untouched
// otherwise).
enum satcube_status satcube_solve(const satcube_formula *f,
                                  int32_t var_order,
                                  int32_t value_order,
                                  uint64_t seed,
                                  uint64_t node_budget,
                                  enum satcube_solve_status *status_out,
                                  uint64_t *model_out);

// Like `satcube_solve`, but returns the full result (status, model as
// signed literals, statistics) as a JSON string.
enum satcube_status satcube_solve_json(const satcube_formula *f,
                                       int32_t var_order,
                                       int32_t value_order,
                                       uint64_t seed,
                                       uint64_t node_budget,
                                       char **out);

// 1 if the assignment index satisfies every clause, else 0.
int32_t satcube_verify_model(const satcube_formula *f, uint64_t model);

// All 8 sign patterns over the triple (i, j, k): unsatisfiable for any n.
enum satcube_status satcube_make_unsat_core(uint32_t n_vars,
                                            uint32_t i,
                                            uint32_t j,
                                            uint32_t k,
                                            satcube_formula **out);

// The 7*C(n,3)-clause maximal satisfiable instance whose unique solution
// is `target`.
enum satcube_status satcube_make_max_sat(uint32_t n_vars, uint64_t target, satcube_formula **out);

// Exact boundary counts as JSON (large counts are decimal strings).
enum satcube_status satcube_bounds_json(uint64_t n_vars, char **out);

// Expected number of solutions 2^n (7/8)^m.
double satcube_expected_solutions(uint32_t n_vars, uint64_t m);

// Expected branches to the first solution (8/7)^m.
double satcube_expected_search_effort(uint64_t m);

// n * alpha * ln(8/7).
double satcube_log_effort(uint32_t n_vars, double alpha);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SATCUBE_H */
