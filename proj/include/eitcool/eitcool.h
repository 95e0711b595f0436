/* Copyright 2026 The eitcool authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the eitcool simulation core.
 *
 * Usage:
 *   eitcool_run* run = NULL;
 *   eitcool_run_create(&run);
 *   eitcool_run_set(run, "preset", "strong");
 *   eitcool_run_set_output_dir(run, "out");
 *   if (eitcool_run_execute(run, "rates") == EITCOOL_OK)
 *     puts(eitcool_run_summary(run));
 *   eitcool_run_destroy(run);
 *
 * All functions are thread-compatible: distinct run handles may be used from
 * distinct threads, a single handle must not be shared concurrently.
 */

#ifndef EITCOOL_EITCOOL_H_
#define EITCOOL_EITCOOL_H_

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eitcool_status {
  EITCOOL_OK = 0,
  /* Invalid call (null handle or argument). */
  EITCOOL_ERR_INVALID_ARGUMENT = 1,
  /* Bad configuration: unknown key, malformed value, unreadable file. */
  EITCOOL_ERR_CONFIG = 2,
  /* Numerical failure: solver breakdown, non-finite results. */
  EITCOOL_ERR_NUMERICAL = 3,
  /* Unexpected internal failure. */
  EITCOOL_ERR_INTERNAL = 4
} eitcool_status;

/* Opaque run handle holding configuration, outputs and the last error. */
typedef struct eitcool_run eitcool_run;

/* Allocates a handle; returns EITCOOL_OK and stores it in *out. */
eitcool_status eitcool_run_create(eitcool_run** out);

/* Releases a handle; a null pointer is ignored. */
void eitcool_run_destroy(eitcool_run* run);

/* Merges keys from a JSON or key=value file into the configuration. */
eitcool_status eitcool_run_load_config(eitcool_run* run, const char* path);

/* Sets one configuration key. Unknown keys fail with EITCOOL_ERR_CONFIG and
 * the offending key is named in eitcool_run_error(). */
eitcool_status eitcool_run_set(eitcool_run* run, const char* key, const char* value);

/* Output directory for result files; defaults to the working directory. */
eitcool_status eitcool_run_set_output_dir(eitcool_run* run, const char* dir);

/* Runs one subcommand: qubit, spectrum, rates, cool, steady, sweep, twomode
 * or converge. Result files are written before this returns. */
eitcool_status eitcool_run_execute(eitcool_run* run, const char* subcommand);

/* JSON summary of the last successful execute; empty string before that.
 * The pointer stays valid until the next execute or destroy. */
const char* eitcool_run_summary(const eitcool_run* run);

/* Message of the last failure on this handle; empty string if none. */
const char* eitcool_run_error(const eitcool_run* run);

/* Library version as "major.minor.patch". */
const char* eitcool_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EITCOOL_EITCOOL_H_ */
