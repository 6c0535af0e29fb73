/* Copyright 2026 The lmprobe Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the lmprobe core. Every function returns a status code
 * (LMPROBE_OK on success); on failure lmprobe_last_error() holds a
 * thread-local message valid until the next failing call on the same
 * thread. Objects are opaque handles released with the matching _free
 * function. Strings returned through char** are heap-allocated and
 * released with lmprobe_string_free.
 */

#ifndef LMPROBE_H_
#define LMPROBE_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lmprobe_status {
  LMPROBE_OK = 0,
  LMPROBE_ERR_IO = 1,
  LMPROBE_ERR_PARSE = 2,
  LMPROBE_ERR_VALIDATION = 3,
  LMPROBE_ERR_CAPABILITY = 4,
  LMPROBE_ERR_CONTRACT = 5,
  LMPROBE_ERR_TEMPLATE = 6,
  LMPROBE_ERR_ALIGNMENT = 7,
  LMPROBE_ERR_SLICING = 8,
  LMPROBE_ERR_TRAINING = 9,
  LMPROBE_ERR_EVAL = 10,
  LMPROBE_ERR_UNKNOWN = 127
} lmprobe_status;

typedef struct lmprobe_task lmprobe_task;
typedef struct lmprobe_task_list lmprobe_task_list;
typedef struct lmprobe_psych lmprobe_psych;
typedef struct lmprobe_adapter lmprobe_adapter;
typedef struct lmprobe_report lmprobe_report;
typedef struct lmprobe_head lmprobe_head;

const char* lmprobe_version(void);
const char* lmprobe_last_error(void);
void lmprobe_string_free(char* s);

/* ---- task data ---------------------------------------------------------- */

/* format: "MC_MLM" | "MC_QA" | NULL (task registry default).
 * split: "train" | "dev". */
lmprobe_status lmprobe_task_load(const char* path, const char* task_name,
                                 const char* split, const char* format,
                                 lmprobe_task** out);
void lmprobe_task_free(lmprobe_task* task);
lmprobe_status lmprobe_task_save(const lmprobe_task* task, const char* path);
lmprobe_status lmprobe_task_size(const lmprobe_task* task, int32_t* out);
lmprobe_status lmprobe_task_name(const lmprobe_task* task, char** out);

/* kind: "identity" | "append_period" */
lmprobe_status lmprobe_task_perturb(const lmprobe_task* task,
                                    const char* kind, lmprobe_task** out);
lmprobe_status lmprobe_task_apply_prompt(const lmprobe_task* task,
                                         const char* prompt_file,
                                         const char* template_name,
                                         lmprobe_task** out);
/* JSON array of the template names in a prompt file. */
lmprobe_status lmprobe_prompt_template_names(const char* prompt_file,
                                             char** names_json_out);

lmprobe_status lmprobe_task_slice_age(const lmprobe_task* task,
                                      const int32_t* edges, int32_t n_edges,
                                      lmprobe_task_list** out);
lmprobe_status lmprobe_task_list_size(const lmprobe_task_list* list,
                                      int32_t* out);
lmprobe_status lmprobe_task_list_name(const lmprobe_task_list* list,
                                      int32_t index, char** out);
/* Returns an owned copy of the slice. */
lmprobe_status lmprobe_task_list_get(const lmprobe_task_list* list,
                                     int32_t index, lmprobe_task** out);
void lmprobe_task_list_free(lmprobe_task_list* list);

/* subset: CPRAG | ROLE | NEG_SIMP | NEG_NAT | NEG_LNAT.
 * check_size: verify the published item count (pass 0 for custom files). */
lmprobe_status lmprobe_psych_load(const char* path, const char* subset,
                                  int check_size, lmprobe_psych** out);
void lmprobe_psych_free(lmprobe_psych* items);
lmprobe_status lmprobe_psych_size(const lmprobe_psych* items, int32_t* out);
/* condition: "affirmative" | "negated" | "none" */
lmprobe_status lmprobe_psych_filter(const lmprobe_psych* items,
                                    const char* condition,
                                    lmprobe_psych** out);

/* ---- adapters ----------------------------------------------------------- */

lmprobe_status lmprobe_adapter_open(const char* registry_path,
                                    const char* adapter_id,
                                    lmprobe_adapter** out);
/* Builds an adapter from a single registry-entry JSON document. */
lmprobe_status lmprobe_adapter_open_json(const char* spec_json,
                                         const char* base_dir,
                                         lmprobe_adapter** out);
void lmprobe_adapter_free(lmprobe_adapter* adapter);
lmprobe_status lmprobe_adapter_id(const lmprobe_adapter* adapter, char** out);
/* JSON object with the capability flags and vocab size. */
lmprobe_status lmprobe_adapter_capabilities(const lmprobe_adapter* adapter,
                                            char** json_out);
/* JSON array of the ids in a registry file. */
lmprobe_status lmprobe_registry_ids(const char* registry_path,
                                    char** ids_json_out);

/* External scorer plugin: callbacks return 0 on success. Unsupported
 * entry points stay NULL; capabilities derive from the non-NULL set.
 * The vocabulary is fixed up front; text is tokenized core-side with the
 * word-punct tokenizer over that vocabulary. */
typedef struct lmprobe_scorer_vtable {
  void* user_data;
  int32_t vocab_size;              /* including <unk> at id 0 */
  const char* (*token)(void* user_data, int32_t id);
  int (*masked_fill)(void* user_data, const char* text_with_blank,
                     double* logprobs /* [vocab_size] */);
  int (*sequence_logprob)(void* user_data, const int32_t* tokens, int32_t n,
                          double* out);
  int (*infill_logprob)(void* user_data, const char* text_with_blank,
                        const int32_t* completion, int32_t n, double* out);
  int (*full_sequence)(void* user_data, const char* corrupted,
                       const char* target, double* logprobs,
                       int32_t n_target_tokens);
} lmprobe_scorer_vtable;

lmprobe_status lmprobe_adapter_create_custom(
    const char* id, const lmprobe_scorer_vtable* vtable,
    lmprobe_adapter** out);

/* ---- evaluation --------------------------------------------------------- */

/* mode: "auto" | "masked" | "causal" | "infill" | "fullseq" (ignored for
 * baseline adapters). options_json (may be NULL):
 *   {"workers": 1, "use_cache": true, "cache_dir": "...",
 *    "bootstrap": {"fraction": 0.2, "resamples": 1000, "seed": 20}} */
lmprobe_status lmprobe_eval_mc(lmprobe_adapter* adapter,
                               const lmprobe_task* task, const char* mode,
                               const char* options_json,
                               lmprobe_report** out);

/* filter_file: stop-word list path or NULL. */
lmprobe_status lmprobe_eval_topk(lmprobe_adapter* adapter,
                                 const lmprobe_psych* items, int32_t k,
                                 const char* filter_file,
                                 lmprobe_report** out);
lmprobe_status lmprobe_eval_sensitivity(lmprobe_adapter* adapter,
                                        const lmprobe_psych* items,
                                        lmprobe_report** out);
lmprobe_status lmprobe_prediction_change_rate(lmprobe_adapter* adapter,
                                              const lmprobe_psych* items,
                                              double* out);

/* Per-question protocol scores, JSON in / JSON out (for tooling):
 * question_json = {"stem": ..., "choices": [...], "answer": k}. */
lmprobe_status lmprobe_score_question(lmprobe_adapter* adapter,
                                      const char* question_json,
                                      const char* mode, char** scores_json);

lmprobe_status lmprobe_report_json(const lmprobe_report* report, char** out);
void lmprobe_report_free(lmprobe_report* report);

/* ---- statistics --------------------------------------------------------- */

/* halfwidth_out: sd of the resample accuracies.
 * fullsample_halfwidth_out: rescaled by sqrt(subsample/n); either output
 * pointer may be NULL. */
lmprobe_status lmprobe_bootstrap_ci(const uint8_t* correct, int32_t n,
                                    double fraction, int32_t n_resamples,
                                    uint64_t seed, double* mean_out,
                                    double* halfwidth_out,
                                    double* fullsample_halfwidth_out);
lmprobe_status lmprobe_spearman(const double* sizes, const double* accuracies,
                                int32_t n, int32_t m_tests, double* rho_out,
                                double* p_out, int32_t* significant_out);
/* JSON array of {"lo": ..., "count": ...} bins. */
lmprobe_status lmprobe_delta_histogram(const double* deltas, int32_t n,
                                       double bin_width, char** bins_json);

/* ---- multi-shot --------------------------------------------------------- */

/* config_json (may be NULL): {"epochs": 3, "learning_rate": 0.5,
 *  "batch_size": 16, "seed": 20, "max_seq_len": 64, "patience": 3} */
lmprobe_status lmprobe_train_mcqa(lmprobe_adapter* adapter,
                                  const lmprobe_task* trainset,
                                  const char* config_json,
                                  lmprobe_head** out);
lmprobe_status lmprobe_eval_mcqa(const lmprobe_head* head,
                                 lmprobe_adapter* adapter,
                                 const lmprobe_task* task,
                                 lmprobe_report** out);
lmprobe_status lmprobe_head_save(const lmprobe_head* head, const char* path);
lmprobe_status lmprobe_head_load(const char* path, lmprobe_head** out);
/* Canonical checkpoint filename (adapter, task and config fingerprint). */
lmprobe_status lmprobe_head_checkpoint_name(const lmprobe_head* head,
                                            char** out);
void lmprobe_head_free(lmprobe_head* head);

/* Masked-objective fine-tuning; returns a new adapter. */
lmprobe_status lmprobe_train_masked(lmprobe_adapter* adapter,
                                    const lmprobe_task* trainset,
                                    const char* config_json,
                                    lmprobe_adapter** out);

/* ---- results files ------------------------------------------------------ */

lmprobe_status lmprobe_results_append(const char* results_path,
                                      const lmprobe_report* report);
lmprobe_status lmprobe_results_append_json(const char* results_path,
                                           const char* record_json);
/* Aggregates *.jsonl under results_dir into tables under out_dir;
 * summary_json_out (may be NULL) receives counts and invalid files. */
lmprobe_status lmprobe_report_aggregate(const char* results_dir,
                                        const char* out_dir,
                                        char** summary_json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LMPROBE_H_ */
