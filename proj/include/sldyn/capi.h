#ifndef SLDYN_CAPI_H
#define SLDYN_CAPI_H

/* C interface to the switching / bridge-system dynamics engine.
 *
 * All functions return SLDYN_OK on success. On failure they return a
 * nonzero status and leave a message retrievable with sldyn_last_error()
 * (thread-local, valid until the next failing call on the same thread).
 * Strings returned through char** are heap-allocated; release them with
 * sldyn_string_free. Handles are opaque; release them with the matching
 * *_free function. NULL input pointers are rejected with SLDYN_EINVAL.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SLDYN_OK 0
#define SLDYN_EINVAL 1   /* malformed or mismatched input */
#define SLDYN_EINTERNAL 2

typedef struct sldyn_network sldyn_network;
typedef struct sldyn_params sldyn_params;
typedef struct sldyn_graph sldyn_graph;

#define SLDYN_MODEL_S 0
#define SLDYN_MODEL_L 1

const char* sldyn_last_error(void);
void sldyn_string_free(char* s);

/* Network DSL. */
int sldyn_network_parse(const char* text, sldyn_network** out);
int sldyn_network_format(const sldyn_network* net, char** out);
void sldyn_network_free(sldyn_network* net);

/* Parameter files (JSON). Parsing binds the file to the network and fails
 * on key mismatches; use sldyn_validate to obtain the mismatch list
 * instead. */
int sldyn_params_parse(const sldyn_network* net, const char* json, sldyn_params** out);
int sldyn_params_model(const sldyn_params* params); /* SLDYN_MODEL_*, or -1 */
void sldyn_params_free(sldyn_params* params);

/* Violation report for a raw parameter file against a network; the model is
 * inferred from the fields present. violation_count receives the number of
 * entries. */
int sldyn_validate(const sldyn_network* net, const char* params_json, char** report_json,
                   int* violation_count);

/* Threshold orders plus the discrete target table, as JSON. */
int sldyn_signature(const sldyn_network* net, const sldyn_params* params, char** json);

/* Canonical lift of a switching parameter, as a loadable parameter file. */
int sldyn_lift(const sldyn_network* net, const sldyn_params* sparams, char** lparams_json);

/* State transition graphs. */
int sldyn_stg_build(const sldyn_network* net, const sldyn_params* params, int threads,
                    sldyn_graph** out);
int sldyn_graph_model(const sldyn_graph* graph);
int sldyn_graph_dot(const sldyn_graph* graph, char** out);
int sldyn_graph_json(const sldyn_graph* graph, const sldyn_network* net, char** out);
void sldyn_graph_free(sldyn_graph* graph);

/* Morse graph of a transition graph. */
int sldyn_morse_dot(const sldyn_graph* graph, const sldyn_network* net, char** out);
int sldyn_morse_json(const sldyn_graph* graph, const sldyn_network* net, char** out);

/* Path query between comma-separated states in the graph's encoding;
 * `exists` receives 0/1. */
int sldyn_path_query(const sldyn_graph* graph, const char* from, const char* to, char** json,
                     int* exists);

/* Full correspondence verification of a switching parameter; `passed`
 * receives 0/1. */
int sldyn_verify(const sldyn_network* net, const sldyn_params* sparams, int threads,
                 char** report_json, int* passed);

/* Built-in examples: claim reports and fixture sources. */
int sldyn_repro(const char* fixture, int threads, char** report_json, int* passed);
int sldyn_fixture_network(const char* fixture, char** rn_text);
int sldyn_fixture_params(const char* fixture, const char* which, char** params_json);

#ifdef __cplusplus
}
#endif

#endif /* SLDYN_CAPI_H */
