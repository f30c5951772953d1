#ifndef MBENNETT_H
#define MBENNETT_H

/* C interface to the multi-Bennett 8R toolkit. Every call returns an
 * mb_status; on failure mb_last_error() holds a message for the calling
 * thread. Strings returned through out-parameters are released with
 * mb_string_free. */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  MB_OK = 0,
  MB_INVALID = 1,
  MB_HYPOTHESIS = 2,
  MB_GENERICITY = 3,
  MB_INCONSISTENT = 4,
  MB_DEGENERATE = 5,
  MB_INTERNAL = 6
} mb_status;

typedef enum {
  MB_ARITH_SEED = 0, /* use the seed's "arithmetic" field, else rational */
  MB_ARITH_RATIONAL = 1,
  MB_ARITH_FLOAT = 2
} mb_arithmetic;

typedef struct mb_session mb_session;

const char* mb_version(void);
const char* mb_status_name(mb_status status);

/* Message and detailed error kind of the last failure on this thread. */
const char* mb_last_error(void);
const char* mb_last_error_kind(void);

mb_status mb_session_create(const char* seed_json, mb_session** out);
void mb_session_destroy(mb_session* session);

mb_status mb_session_set_arithmetic(mb_session* session, mb_arithmetic arithmetic);
/* Require the seed to be of this mode ("primal", "dual" or "canonical"). */
mb_status mb_session_set_mode(mb_session* session, const char* mode);
mb_status mb_session_set_tolerance(mb_session* session, double tol);
/* Comma-separated values, "a:b:n" ranges and "inf"; used for both s and t. */
mb_status mb_session_set_grid(mb_session* session, const char* grid);

mb_status mb_factor(mb_session* session, char** out_json);
mb_status mb_mechanism(mb_session* session, char** mechanism_json, char** trajectory_json,
                       char** report_json);
mb_status mb_dh(mb_session* session, char** out_json);

void mb_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
