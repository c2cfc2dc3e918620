// Copyright 2026 The subexp Authors
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

/* C interface to the subexp library. Every call returns an sx_status; on
 * failure sx_last_error() describes the problem (thread-local, valid until the
 * next failing call on the same thread). Strings returned through char** are
 * heap-allocated and must be released with sx_string_free. */

#ifndef SUBEXP_SUBEXP_H
#define SUBEXP_SUBEXP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sx_status {
  SX_OK = 0,
  SX_ERR_INVALID_ARGUMENT = 1,
  SX_ERR_NUMERICAL = 2,
  SX_ERR_IO = 3,
  SX_ERR_INTERNAL = 4
} sx_status;

typedef enum sx_up_method { SX_UP_CONVOLUTION = 0, SX_UP_FOURIER = 1 } sx_up_method;

/* Sampled function on [-L, L)^n with N points per axis (n in {1, 2}). */
typedef struct sx_function sx_function;

const char* sx_version(void);
const char* sx_last_error(void);
const char* sx_status_name(sx_status status);
void sx_string_free(char* s);

/* ---- functions ---- */

/* kind: "mode", "gaussian", "random_bandlimited", "zero". params_json may be
 * NULL or an object with keys k, c_re, c_im, a, band, real, decay. */
sx_status sx_function_synthesize(const char* kind, int n, double L, int N, const char* params_json, uint64_t seed,
                                 sx_function** out);
/* re/im hold N^n values each; im may be NULL for real data. */
sx_status sx_function_from_values(int n, double L, int N, const double* re, const double* im, sx_function** out);
sx_status sx_function_load(const char* path, sx_function** out);
sx_status sx_function_parse(const char* text, sx_function** out);
sx_status sx_function_save(const sx_function* f, const char* path);
sx_status sx_function_serialize(const sx_function* f, char** out);
sx_status sx_function_info(const sx_function* f, int* n, double* L, int* N);
/* Copies min(len, N^n) samples; re or im may be NULL. */
sx_status sx_function_values(const sx_function* f, double* re, double* im, size_t len);
void sx_function_free(sx_function* f);

/* ---- norms ----
 * params_json: {"p": 2, "q": 2, "weight": "gevrey:2", "mode": "continuum", "k_max": -1};
 * every key is optional and p, q accept "inf". */
sx_status sx_mod_norm(const sx_function* f, const char* params_json, double* value, char** record_json);
sx_status sx_stft_norm(const sx_function* f, const sx_function* window, double p, double q, const char* weight,
                       double* value);
sx_status sx_lp_norm(const sx_function* f, double p, double* value);
sx_status sx_multiply(const sx_function* f, const sx_function* g, sx_function** out);
/* name: "gevrey_bump:<mu>", "up", "density:<spec>". */
sx_status sx_compose(const char* name, const sx_function* u, sx_function** out);

/* ---- weights and constants ---- */

sx_status sx_analyze_weight(double* t0, double* p0);
sx_status sx_weight_eval(const char* weight, const double* k, int n, double* value);
sx_status sx_upper_incomplete_gamma(double alpha, double t, double* value);
sx_status sx_inverse_g(double alpha, double u, double* value);
sx_status sx_constants_table(char** json);

/* ---- special functions ---- */

sx_status sx_up_eval(double x, sx_up_method method, double* value);
sx_status sx_up_fourier(double xi, double* re, double* im);
sx_status sx_gevrey_bump(double mu, double t, double* value);
sx_status sx_gevrey_bump_fourier(double mu, double xi, double* re, double* im);

/* ---- campaigns ----
 * passed may be NULL. overrides_json may be NULL. */
sx_status sx_verify(const char* family, const char* profile, const char* overrides_json, char** report_json,
                    int* passed);
sx_status sx_default_options(const char* family, const char* profile, char** json);
sx_status sx_special_check(const char* which, const char* overrides_json, char** report_json, int* passed);
sx_status sx_weight_inequality(const char* kind, const char* params_json, char** report_json, int* passed);
sx_status sx_corpus_generate(const char* dir, uint64_t seed, int count, const char* spec_json, char** manifest_json);
sx_status sx_report_merge(const char* dir, char** summary_json);
sx_status sx_environment(char** json);

#ifdef __cplusplus
}
#endif

#endif /* SUBEXP_SUBEXP_H */
