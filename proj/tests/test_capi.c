/* Copyright 2026 The subexp Authors
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
 * limitations under the License. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "subexp/subexp.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static const double kPi = 3.14159265358979323846;

static void test_version_and_names(void) {
  EXPECT(strlen(sx_version()) > 0);
  EXPECT(strcmp(sx_status_name(SX_OK), "ok") == 0);
  EXPECT(strcmp(sx_status_name(SX_ERR_IO), "io_error") == 0);
}

static void test_function_roundtrip(void) {
  sx_function* f = NULL;
  EXPECT(sx_function_synthesize("random_bandlimited", 1, kPi, 64, "{\"band\": 5}", 7, &f) == SX_OK);
  int n = 0, N = 0;
  double L = 0.0;
  EXPECT(sx_function_info(f, &n, &L, &N) == SX_OK);
  EXPECT(n == 1 && N == 64 && L == kPi);

  char* text = NULL;
  EXPECT(sx_function_serialize(f, &text) == SX_OK);
  sx_function* g = NULL;
  EXPECT(sx_function_parse(text, &g) == SX_OK);
  sx_string_free(text);

  double a[64], b[64];
  EXPECT(sx_function_values(f, a, NULL, 64) == SX_OK);
  EXPECT(sx_function_values(g, b, NULL, 64) == SX_OK);
  EXPECT(memcmp(a, b, sizeof a) == 0);
  sx_function_free(f);
  sx_function_free(g);
}

static void test_norms(void) {
  /* A single lattice mode e^{3ix} has norm w(3) (2 pi)^{1/2} for p = q = 2. */
  sx_function* f = NULL;
  EXPECT(sx_function_synthesize("mode", 1, kPi, 64, "{\"k\": [3]}", 0, &f) == SX_OK);
  double value = 0.0, w = 0.0, k = 3.0;
  char* record = NULL;
  EXPECT(sx_mod_norm(f, "{\"mode\": \"lattice\", \"weight\": \"gevrey:2\"}", &value, &record) == SX_OK);
  EXPECT(record != NULL && strstr(record, "\"value\"") != NULL);
  sx_string_free(record);
  EXPECT(sx_weight_eval("gevrey:2", &k, 1, &w) == SX_OK);
  EXPECT(fabs(value - w * sqrt(2.0 * kPi)) < 1e-10 * value);

  double lp = 0.0;
  EXPECT(sx_lp_norm(f, 2.0, &lp) == SX_OK);
  EXPECT(fabs(lp - sqrt(2.0 * kPi)) < 1e-12);

  sx_function* sq = NULL;
  EXPECT(sx_multiply(f, f, &sq) == SX_OK);
  sx_function_free(sq);
  sx_function_free(f);
}

static void test_errors(void) {
  sx_function* f = NULL;
  EXPECT(sx_function_synthesize("nonsense", 1, kPi, 64, NULL, 0, &f) == SX_ERR_INVALID_ARGUMENT);
  EXPECT(f == NULL);
  EXPECT(strlen(sx_last_error()) > 0);
  EXPECT(sx_function_load("/nonexistent/fixture.csv", &f) == SX_ERR_IO);
  EXPECT(sx_function_parse("garbage", &f) != SX_OK);
  EXPECT(sx_mod_norm(NULL, NULL, NULL, NULL) == SX_ERR_INVALID_ARGUMENT);
  EXPECT(sx_verify("nope", "quick", NULL, NULL, NULL) == SX_ERR_INVALID_ARGUMENT);
  double v = 0.0;
  EXPECT(sx_gevrey_bump_fourier(-1.0, 2e5, &v, &v) == SX_ERR_NUMERICAL);
  EXPECT(sx_mod_norm(NULL, "{bad json", &v, NULL) == SX_ERR_INVALID_ARGUMENT);
}

static void test_scalars(void) {
  double t0 = 0.0, p0 = 0.0, v = 0.0, re = 0.0, im = 0.0;
  EXPECT(sx_analyze_weight(&t0, &p0) == SX_OK);
  EXPECT(t0 > 16.4449 && t0 < 16.4451);
  EXPECT(p0 > 0.410247 && p0 < 0.410248);
  EXPECT(sx_upper_incomplete_gamma(1.0, 2.0, &v) == SX_OK);
  EXPECT(fabs(v - exp(-2.0)) < 1e-14);
  EXPECT(sx_up_eval(1.0, SX_UP_CONVOLUTION, &v) == SX_OK);
  EXPECT(fabs(v - 1.0) < 1e-12);
  EXPECT(sx_up_fourier(0.0, &re, &im) == SX_OK);
  EXPECT(fabs(re - 1.0 / sqrt(2.0 * kPi)) < 1e-12 && fabs(im) < 1e-15);
  EXPECT(sx_gevrey_bump(-1.0, 2.0, &v) == SX_OK);
  EXPECT(v == 0.0);
}

static void test_campaign(void) {
  char* json = NULL;
  int passed = 0;
  EXPECT(sx_verify("partition", "quick", "{\"lattice_1d\": 10}", &json, &passed) == SX_OK);
  EXPECT(passed == 1);
  EXPECT(json != NULL && strstr(json, "verify/partition/quick") != NULL);
  sx_string_free(json);
  json = NULL;
  EXPECT(sx_environment(&json) == SX_OK);
  EXPECT(strstr(json, "fftw") != NULL);
  sx_string_free(json);
  sx_string_free(NULL);
}

int main(void) {
  test_version_and_names();
  test_function_roundtrip();
  test_norms();
  test_errors();
  test_scalars();
  test_campaign();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("all C API checks passed\n");
  return 0;
}
