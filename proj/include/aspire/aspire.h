// Copyright 2026 The Aspire Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the aspire reasoning engine.
 *
 * Every call returns an aspire_status. On failure, aspire_last_error()
 * describes the problem for the calling thread. Strings handed out through
 * char** parameters are owned by the caller and released with
 * aspire_free_string(). Handles are not thread-safe; use one per thread.
 */

#ifndef ASPIRE_ASPIRE_H_
#define ASPIRE_ASPIRE_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define ASPIRE_API __attribute__((visibility("default")))
#else
#define ASPIRE_API
#endif

typedef enum aspire_status {
  ASPIRE_OK = 0,
  ASPIRE_E_PARSE = 1,
  ASPIRE_E_SEMANTIC = 2,
  ASPIRE_E_GROUND_LIMIT = 3,
  ASPIRE_E_ORACLE_CAP = 4,
  ASPIRE_E_IO = 5,
  ASPIRE_E_NOT_FOUND = 6,
  ASPIRE_E_NO_PLAN = 7,
  ASPIRE_E_INVALID_ARGUMENT = 8,
  ASPIRE_E_TEMPLATE_FILL = 9,
  ASPIRE_E_UNPARSEABLE_QUESTION = 10,
  ASPIRE_E_INTERNAL = 11
} aspire_status;

typedef struct aspire_kb aspire_kb;
typedef struct aspire_qa aspire_qa;

ASPIRE_API const char *aspire_version(void);
ASPIRE_API const char *aspire_status_name(aspire_status status);
ASPIRE_API const char *aspire_last_error(void);
ASPIRE_API void aspire_free_string(char *s);

/* Answer sets of a program, one "{a, b, ...}" line each, at most
 * max_models (0 for all). With use_cr, consistency-restoring rules are
 * applied minimally when the regular part is inconsistent. */
ASPIRE_API aspire_status aspire_solve(const char *program, size_t max_models, int use_cr,
                                      char **out);

/* System descriptions. */
ASPIRE_API aspire_status aspire_kb_load(const char *path, aspire_kb **out);
ASPIRE_API aspire_status aspire_kb_parse(const char *text, aspire_kb **out);
ASPIRE_API void aspire_kb_free(aspire_kb *kb);
ASPIRE_API aspire_status aspire_kb_text(const aspire_kb *kb, char **out);

/* Classifies a feature vector written "name=value name=value". The label
 * is empty when the KB draws no conclusion; support lists the literals
 * behind the conclusion, one per line. Either output may be NULL. */
ASPIRE_API aspire_status aspire_kb_classify(const aspire_kb *kb, const char *features,
                                            char **label, char **support);

/* Learns state constraints from a labelled CSV (feature columns of the
 * domain's schema, then "label") and installs them in kb. The report
 * lists stage counts and the installed axioms. domain is "ss", "ts" or
 * "ra". */
ASPIRE_API aspire_status aspire_kb_learn(aspire_kb *kb, const char *domain, const char *csv,
                                         double leaf_support_fraction, uint64_t seed,
                                         char **report);

/* n generated, correctly labelled examples of a domain as CSV in the
 * format aspire_kb_learn reads. */
ASPIRE_API aspire_status aspire_dataset(const char *domain, int n, uint64_t seed, char **csv);

/* Question answering over one scene at a time. kb_path may be NULL for
 * the domain's shipped KB. */
ASPIRE_API aspire_status aspire_qa_open(const char *domain, const char *kb_path, aspire_qa **out);
ASPIRE_API void aspire_qa_free(aspire_qa *qa);
/* Trains the fallback tree and answer model on n generated scenes. */
ASPIRE_API aspire_status aspire_qa_train(aspire_qa *qa, int n, uint64_t seed);
/* One scene record line (see the scene file format). */
ASPIRE_API aspire_status aspire_qa_set_scene(aspire_qa *qa, const char *scene_line);
/* Answers a question about the current scene. route is "symbolic",
 * "fallback" or "unanswered"; it may be NULL. */
ASPIRE_API aspire_status aspire_qa_ask(aspire_qa *qa, const char *question, char **answer,
                                       char **route);
/* Support literals or tree tests behind the last answer. */
ASPIRE_API aspire_status aspire_qa_explain(const aspire_qa *qa, char **out);

/* Minimal plan on the robot assistant map (map_dir NULL for the shipped
 * one) to deliver a message to recipient and return to start, one action
 * per line. With learned_defaults the recipient is assumed at their
 * workplace; otherwise the plan assumes the nearest place. */
ASPIRE_API aspire_status aspire_plan(const char *map_dir, const char *start,
                                     const char *recipient, int learned_defaults,
                                     int max_horizon, char **out);

/* Simulated delivery with replanning. log receives the step CSV, summary
 * one "key=value" line per counter. */
ASPIRE_API aspire_status aspire_deliver(const char *map_dir, const char *start,
                                        const char *recipient, int learned_defaults,
                                        uint64_t seed, char **log, char **summary);

/* Runs an experiment. config is "key = value" text (may be NULL for the
 * defaults). The tables, summary.md and manifest.txt are written to
 * output_dir, or to the config's output_dir when it is NULL. complete is
 * set to 0 when any trial failed. */
ASPIRE_API aspire_status aspire_experiment(const char *experiment, const char *config,
                                           const char *output_dir, char **summary,
                                           int *complete);

#ifdef __cplusplus
}
#endif

#endif /* ASPIRE_ASPIRE_H_ */
