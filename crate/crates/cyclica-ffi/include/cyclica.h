/* C interface for the cyclica exact cyclic cohomology engine.
 *
 * All handles are opaque and owned by the caller; release them with the
 * matching *_free function. Strings returned through char** are released
 * with cyclica_string_free. Functions return a CyclicaStatus code; on any
 * non-zero status, cyclica_last_error() gives a thread-local message valid
 * until the next failing call on the same thread.
 */

#ifndef CYCLICA_H
#define CYCLICA_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum CyclicaStatus {
  CYCLICA_OK = 0,
  CYCLICA_ERR_NULL_POINTER = 1,
  CYCLICA_ERR_UTF8 = 2,
  CYCLICA_ERR_BAD_INPUT = 3,
  CYCLICA_ERR_VALIDATION = 4,
  CYCLICA_ERR_COMPUTE = 5,
  CYCLICA_ERR_INTERNAL = 6
} CyclicaStatus;

/* Complex selectors. Plain/Lambda/ConstantUnit apply to algebra handles;
 * Equivariant/CrossedPlain/CrossedConstant apply to action handles. */
typedef enum CyclicaComplex {
  CYCLICA_COMPLEX_PLAIN = 0,
  CYCLICA_COMPLEX_LAMBDA = 1,
  CYCLICA_COMPLEX_CONSTANT_UNIT = 2,
  CYCLICA_COMPLEX_EQUIVARIANT = 3,
  CYCLICA_COMPLEX_CROSSED_PLAIN = 4,
  CYCLICA_COMPLEX_CROSSED_CONSTANT = 5
} CyclicaComplex;

typedef struct CyclicaAlgebra CyclicaAlgebra;
typedef struct CyclicaAction CyclicaAction;
typedef struct CyclicaReport CyclicaReport;

/* Thread-local message for the most recent error. Never NULL. */
const char *cyclica_last_error(void);

/* source: a built-in name (see `cyclica list`) or JSON spec text. */
int cyclica_algebra_new(const char *source, CyclicaAlgebra **out);
void cyclica_algebra_free(CyclicaAlgebra *handle);
int cyclica_algebra_dim(const CyclicaAlgebra *handle);

int cyclica_action_new(const char *source, CyclicaAction **out);
void cyclica_action_free(CyclicaAction *handle);

/* Cohomology tables report degrees 0..max_degree-1 (max_degree >= 1). */
int cyclica_hc_algebra(const CyclicaAlgebra *algebra, int complex_kind,
                       uint32_t max_degree, CyclicaReport **out);
int cyclica_hc_action(const CyclicaAction *action, int complex_kind,
                      uint32_t max_degree, CyclicaReport **out);

int cyclica_report_len(const CyclicaReport *report);
int cyclica_report_hc_dim(const CyclicaReport *report, uint32_t degree);
int cyclica_report_to_json(const CyclicaReport *report, char **out);
void cyclica_report_free(CyclicaReport *report);
void cyclica_string_free(char *s);

/* Full theorem suite; *passed is set to 1 when every check holds.
 * json_report may be NULL; otherwise receives an owned JSON string. */
int cyclica_verify_theorem(const CyclicaAction *action, uint32_t max_degree,
                           int *passed, char **json_report);
int cyclica_verify_corollary(const CyclicaAction *action, uint32_t max_degree,
                             int *passed);

const char *cyclica_version(void);

#ifdef __cplusplus
}
#endif

#endif /* CYCLICA_H */
