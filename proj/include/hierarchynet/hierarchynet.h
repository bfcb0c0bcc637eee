#ifndef HIERARCHYNET_H
#define HIERARCHYNET_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HNET_API __declspec(dllexport)
#else
#define HNET_API __attribute__((visibility("default")))
#endif

typedef enum {
  HNET_OK = 0,
  HNET_E_USAGE = 1,    /* bad arguments or config */
  HNET_E_DATA = 2,     /* unparseable input, bad corpus or checkpoint */
  HNET_E_NUMERIC = 3,  /* shape errors, non-finite loss */
  HNET_E_IO = 4,
  HNET_E_INTERNAL = 5
} hnet_status;

/* Message for the last failure on the calling thread; "" after success. */
HNET_API const char* hnet_last_error(void);
HNET_API const char* hnet_version(void);

/* Strings returned through char** out-parameters are owned by the caller. */
HNET_API void hnet_string_free(char* s);

/* Receives one progress line at a time. */
typedef void (*hnet_log_fn)(const char* line, void* user);

/* ---- representation ---------------------------------------------------- */

typedef struct hnet_hcr hnet_hcr;

/* Builds all layers for one Java method. `edges` is a list such as
   "ast,ns,cd,df", "all" or NULL (all); string literals are replaced first. */
HNET_API hnet_status hnet_hcr_build(const char* code, const char* edges, hnet_hcr** out);
HNET_API void hnet_hcr_free(hnet_hcr* h);

/* section: "all", "ast", "subtrees" or "graph". */
HNET_API hnet_status hnet_hcr_json(const hnet_hcr* h, const char* section, char** out);
/* layer: "subtrees" or "graph". */
HNET_API hnet_status hnet_hcr_dot(const hnet_hcr* h, const char* layer, char** out);
/* type: "AST", "CD", "DF", "NS" or a reverse name such as "CD_rev". */
HNET_API hnet_status hnet_hcr_edge_count(const hnet_hcr* h, const char* type, size_t* out);
HNET_API hnet_status hnet_hcr_sizes(const hnet_hcr* h, size_t* sequence, size_t* subtrees, size_t* graph_nodes);

/* ---- corpus ------------------------------------------------------------ */

/* Raw JSONL corpus to HCR JSONL plus a manifest (manifest may be NULL). */
HNET_API hnet_status hnet_extract(const char* input, const char* output, const char* manifest, const char* edges,
                                  int max_summary_words, size_t* accepted, size_t* skipped);

/* ---- training and inference -------------------------------------------- */

/* `config_json` is a run config document. On success `result_json` (may be
   NULL) receives per-epoch logs and the best validation BLEU. */
HNET_API hnet_status hnet_train(const char* config_json, hnet_log_fn log, void* user, char** result_json);

/* Resolved config of one ablation row (1..10) derived from a base config. */
HNET_API hnet_status hnet_ablation_config(const char* config_json, int row, char** out);
/* Trains and evaluates one ablation row; `report_json` gets both results. */
HNET_API hnet_status hnet_ablate(const char* config_json, int row, hnet_log_fn log, void* user, char** report_json);

typedef struct hnet_run hnet_run;

/* Opens a trained run directory (config.json, tokenizers, model.ckpt). */
HNET_API hnet_status hnet_run_open(const char* dir, hnet_run** out);
HNET_API void hnet_run_free(hnet_run* r);

HNET_API hnet_status hnet_run_summarize(const hnet_run* r, const char* code, char** out);
/* Gate values for one method: 1 in scalar mode, d in vector mode. Writes at
   most `cap` values and always reports the full count in `count`. */
HNET_API hnet_status hnet_run_gates(const hnet_run* r, const char* code, double* values, size_t cap, size_t* count);
/* data NULL or "" means the run's own corpus; split is train/valid/test/all. */
HNET_API hnet_status hnet_run_evaluate(const hnet_run* r, const char* data, const char* split, int threads,
                                       char** report_json, char** table);

/* ---- metrics ----------------------------------------------------------- */

/* refs/hyps are JSON arrays of strings of equal length. */
HNET_API hnet_status hnet_score_texts(const char* refs_json, const char* hyps_json, char** report_json);

#ifdef __cplusplus
}
#endif

#endif
