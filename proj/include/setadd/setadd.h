#ifndef SETADD_H
#define SETADD_H

/* C interface to the restricted set addition workbench.
 *
 * Every call returns an sa_status; on failure sa_last_error() holds a
 * thread-local message. Strings returned through char** are owned by the
 * caller and released with sa_string_free. Elements are flat indices. */

#include <stdint.h>

#if defined(_WIN32)
#  if defined(SETADD_BUILDING)
#    define SETADD_API __declspec(dllexport)
#  else
#    define SETADD_API __declspec(dllimport)
#  endif
#else
#  define SETADD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sa_status {
  SA_OK = 0,
  SA_ERR_INVALID_ARGUMENT = 1,
  SA_ERR_INVALID_SPEC = 2,
  SA_ERR_PARSE = 3,
  SA_ERR_CAP_EXCEEDED = 4,
  SA_ERR_HYPOTHESIS = 5,
  SA_ERR_GROUP_MISMATCH = 6,
  SA_ERR_INTERNAL = 7
} sa_status;

typedef struct sa_group sa_group;
typedef struct sa_automorphism sa_automorphism;

SETADD_API const char* sa_version(void);
SETADD_API const char* sa_last_error(void);
SETADD_API const char* sa_status_name(sa_status status);
SETADD_API void sa_string_free(char* s);

/* Groups. spec_json is a group descriptor such as {"cyclic": 7}. */
SETADD_API sa_status sa_group_create(const char* spec_json, int cap_override, sa_group** out);
SETADD_API void sa_group_destroy(sa_group* g);
SETADD_API uint64_t sa_group_order(const sa_group* g);
SETADD_API sa_status sa_group_op(const sa_group* g, uint32_t a, uint32_t b, uint32_t* out);
SETADD_API sa_status sa_group_inverse(const sa_group* g, uint32_t a, uint32_t* out);
SETADD_API sa_status sa_group_element_order(const sa_group* g, uint32_t a, uint64_t* out);
/* Smallest prime dividing |G|; 0 stands for infinity (trivial group). */
SETADD_API sa_status sa_group_p(const sa_group* g, uint64_t* out);
/* Element index for a flat or nested-tuple JSON element. */
SETADD_API sa_status sa_group_parse_element(const sa_group* g, const char* element_json, uint32_t* out);
SETADD_API sa_status sa_group_info_json(const sa_group* g, char** out);

/* Automorphisms. spec_json is e.g. {"multiplier": 3} or {"identity": true}. */
SETADD_API sa_status sa_automorphism_create(const sa_group* g, const char* spec_json, sa_automorphism** out);
SETADD_API void sa_automorphism_destroy(sa_automorphism* t);
SETADD_API sa_status sa_automorphism_apply(const sa_automorphism* t, uint32_t a, uint32_t* out);
SETADD_API sa_status sa_automorphism_order(const sa_automorphism* t, uint64_t* out);
SETADD_API sa_status sa_automorphism_delta(const sa_automorphism* t, int* out);

/* {"group": spec, "a": set, "b": set, "restricted": bool, "theta": spec}
 * -> {"result": [...], "size": n, ...}. Sets are literals ("0,1,2",
 * "[[0,0],1];[[2,0],1]", "0x7") or JSON element arrays. */
SETADD_API sa_status sa_sumset_json(const char* request_json, char** out);

/* {"group": spec, "a": set, "b": set, "bound": "cd"|"eh"} -> classification report. */
SETADD_API sa_status sa_classify_json(const char* request_json, char** out);

/* verifier: cd, eh, chowla, vosper, inverse-dh, thm51, thm61, dupan, olson.
 * *findings is set to 1 when the report lists violations or failures. */
SETADD_API sa_status sa_verify_json(const char* verifier, const char* request_json, unsigned workers, char** out,
                                    int* findings);

/* Task descriptor plus "bound": "cd"|"eh". csv_out may be NULL. */
SETADD_API sa_status sa_search_critical_json(const char* request_json, unsigned workers, char** report_out,
                                             char** csv_out, int* findings);

/* name: "eh-nonabelian". */
SETADD_API sa_status sa_example_json(const char* name, char** out, int* findings);

/* Report with timing fields removed, for byte comparison. */
SETADD_API sa_status sa_report_strip_timing(const char* report_json, char** out);

#ifdef __cplusplus
}
#endif

#endif
