#ifndef RRBKIT_H
#define RRBKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RRBKIT_API __declspec(dllexport)
#else
#define RRBKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rrbkit_status {
  RRBKIT_OK = 0,
  RRBKIT_ERR_INVALID_ARGUMENT = 1,
  RRBKIT_ERR_SIGNATURE = 2,
  RRBKIT_ERR_OUT_OF_RANGE = 3,
  RRBKIT_ERR_BOUND = 4,
  RRBKIT_ERR_PARSE = 5,
  RRBKIT_ERR_VALIDATION = 6,
  RRBKIT_ERR_UNDEFINED = 7,
  RRBKIT_ERR_INTERNAL = 8
} rrbkit_status;

typedef struct rrbkit_algebra rrbkit_algebra;
typedef struct rrbkit_structure rrbkit_structure;

/* Message of the last failure on the calling thread; empty after success. */
RRBKIT_API const char* rrbkit_last_error(void);

/* Strings returned through char** are owned by the caller. */
RRBKIT_API void rrbkit_string_free(char* s);

RRBKIT_API rrbkit_status rrbkit_algebra_parse(const char* text, rrbkit_algebra** out);
RRBKIT_API rrbkit_status rrbkit_structure_parse(const char* text, rrbkit_structure** out);
RRBKIT_API void rrbkit_algebra_free(rrbkit_algebra* a);
RRBKIT_API void rrbkit_structure_free(rrbkit_structure* s);

RRBKIT_API size_t rrbkit_algebra_size(const rrbkit_algebra* a);
RRBKIT_API size_t rrbkit_structure_size(const rrbkit_structure* s);
RRBKIT_API size_t rrbkit_structure_tuple_count(const rrbkit_structure* s);

/* op(args) for the operation named op; args holds arity elements. */
RRBKIT_API rrbkit_status rrbkit_algebra_apply(const rrbkit_algebra* a, const char* op, const uint32_t* args,
                                              size_t arity, uint32_t* result);

/* format: "json", "dot" or "table". */
RRBKIT_API rrbkit_status rrbkit_algebra_render(const rrbkit_algebra* a, const char* format, char** out);
RRBKIT_API rrbkit_status rrbkit_structure_render(const rrbkit_structure* s, const char* format, char** out);

RRBKIT_API rrbkit_status rrbkit_free_algebra(const char* variety, size_t generators, rrbkit_algebra** out);
RRBKIT_API rrbkit_status rrbkit_apply_u(const rrbkit_algebra* a, const char* scheme, rrbkit_structure** out);

/* F of a structure under a variety. When eta is not NULL it receives one
   element of the result per element of the structure. */
RRBKIT_API rrbkit_status rrbkit_apply_f(const rrbkit_structure* s, const char* variety, rrbkit_algebra** out,
                                        uint32_t* eta);

RRBKIT_API rrbkit_status rrbkit_check_variety(const rrbkit_algebra* a, const char* variety, int* member);
RRBKIT_API rrbkit_status rrbkit_monolith(const rrbkit_algebra* a, int* subdirectly_irreducible);
RRBKIT_API rrbkit_status rrbkit_congruence_count(const rrbkit_algebra* a, size_t* count);
RRBKIT_API rrbkit_status rrbkit_find_isomorphism(const rrbkit_algebra* a, const rrbkit_algebra* b, int* found);

/* Runs a command line as the rrbkit tool would (argv excludes the program
   name). exit_code follows the tool: 0 success, 1 false verdict, 2 error. */
RRBKIT_API rrbkit_status rrbkit_run_command(int argc, const char* const* argv, int* exit_code, char** out,
                                            char** err);

#ifdef __cplusplus
}
#endif

#endif
