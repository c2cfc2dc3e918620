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

#include "subexp/subexp.h"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>

#include "subexp/campaign.hpp"
#include "subexp/constants.hpp"
#include "subexp/modspace.hpp"
#include "subexp/specialfn.hpp"
#include "subexp/superpose.hpp"
#include "subexp/weights.hpp"

struct sx_function {
  subexp::SampledFunction f;
};

namespace {

using subexp::Json;

thread_local std::string g_last_error;

sx_status fail(sx_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Runs body and converts exceptions into status codes.
template <class Body>
sx_status guarded(Body&& body) {
  try {
    body();
    return SX_OK;
  } catch (const subexp::InvalidArgument& e) {
    return fail(SX_ERR_INVALID_ARGUMENT, e.what());
  } catch (const subexp::NumericalError& e) {
    return fail(SX_ERR_NUMERICAL, e.what());
  } catch (const subexp::IoError& e) {
    return fail(SX_ERR_IO, e.what());
  } catch (const Json::exception& e) {
    return fail(SX_ERR_INVALID_ARGUMENT, std::string("JSON: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(SX_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SX_ERR_INTERNAL, e.what());
  }
}

void require(const void* p, const char* name) {
  if (!p) throw subexp::InvalidArgument(std::string(name) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Json parse_optional(const char* text) {
  if (!text || !*text) return Json::object();
  Json j = Json::parse(text);
  if (!j.is_object()) throw subexp::InvalidArgument("expected a JSON object");
  return j;
}

double exponent(const Json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    throw subexp::InvalidArgument("exponent must be a number or \"inf\"");
  }
  return v.get<double>();
}

subexp::NormParams norm_params(const Json& j) {
  subexp::NormParams p;
  if (j.contains("p")) p.p = exponent(j.at("p"));
  if (j.contains("q")) p.q = exponent(j.at("q"));
  if (j.contains("weight")) p.weight = subexp::parse_weight(j.at("weight").get<std::string>());
  if (j.contains("mode")) p.mode = subexp::parse_mode(j.at("mode").get<std::string>());
  if (j.contains("k_max")) p.k_max = j.at("k_max").get<int>();
  return p;
}

sx_function* wrap(subexp::SampledFunction f) { return new sx_function{std::move(f)}; }

void emit(const Json& j, char** out, int* passed) {
  if (passed) *passed = j.value("passed", false) ? 1 : 0;
  *out = dup_string(j.dump(2));
}

}  // namespace

extern "C" {

const char* sx_version(void) { return "0.1.0"; }

const char* sx_last_error(void) { return g_last_error.c_str(); }

const char* sx_status_name(sx_status status) {
  switch (status) {
    case SX_OK: return "ok";
    case SX_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SX_ERR_NUMERICAL: return "numerical_error";
    case SX_ERR_IO: return "io_error";
    case SX_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

void sx_string_free(char* s) { std::free(s); }

sx_status sx_function_synthesize(const char* kind, int n, double L, int N, const char* params_json, uint64_t seed,
                                 sx_function** out) {
  return guarded([&] {
    require(kind, "kind");
    require(out, "out");
    const Json j = parse_optional(params_json);
    subexp::SynthParams p;
    if (j.contains("k")) p.k = j.at("k").get<std::vector<double>>();
    p.c = {j.value("c_re", 1.0), j.value("c_im", 0.0)};
    p.a = j.value("a", p.a);
    p.band = j.value("band", p.band);
    p.real = j.value("real", p.real);
    p.decay = j.value("decay", p.decay);
    *out = wrap(subexp::synthesize(kind, n, L, N, p, seed));
  });
}

sx_status sx_function_from_values(int n, double L, int N, const double* re, const double* im, sx_function** out) {
  return guarded([&] {
    require(re, "re");
    require(out, "out");
    subexp::SampledFunction f = subexp::make_function(n, L, N);
    for (std::size_t i = 0; i < f.size(); ++i) f.values[i] = {re[i], im ? im[i] : 0.0};
    *out = wrap(std::move(f));
  });
}

sx_status sx_function_load(const char* path, sx_function** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = wrap(subexp::load_function(path));
  });
}

sx_status sx_function_parse(const char* text, sx_function** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = wrap(subexp::parse_function(text));
  });
}

sx_status sx_function_save(const sx_function* f, const char* path) {
  return guarded([&] {
    require(f, "f");
    require(path, "path");
    subexp::save_function(f->f, path);
  });
}

sx_status sx_function_serialize(const sx_function* f, char** out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = dup_string(subexp::serialize_function(f->f));
  });
}

sx_status sx_function_info(const sx_function* f, int* n, double* L, int* N) {
  return guarded([&] {
    require(f, "f");
    if (n) *n = f->f.n;
    if (L) *L = f->f.L;
    if (N) *N = f->f.N;
  });
}

sx_status sx_function_values(const sx_function* f, double* re, double* im, size_t len) {
  return guarded([&] {
    require(f, "f");
    const std::size_t m = std::min(len, f->f.size());
    for (std::size_t i = 0; i < m; ++i) {
      if (re) re[i] = f->f.values[i].real();
      if (im) im[i] = f->f.values[i].imag();
    }
  });
}

void sx_function_free(sx_function* f) { delete f; }

sx_status sx_mod_norm(const sx_function* f, const char* params_json, double* value, char** record_json) {
  return guarded([&] {
    require(f, "f");
    const subexp::NormParams p = norm_params(parse_optional(params_json));
    const subexp::NormResult r = subexp::mod_norm(f->f, p);
    if (value) *value = r.value;
    if (record_json) *record_json = dup_string(subexp::to_json(r, p).dump(2));
  });
}

sx_status sx_stft_norm(const sx_function* f, const sx_function* window, double p, double q, const char* weight,
                       double* value) {
  return guarded([&] {
    require(f, "f");
    require(window, "window");
    require(weight, "weight");
    require(value, "value");
    *value = subexp::stft_norm(f->f, p, q, subexp::parse_weight(weight), window->f);
  });
}

sx_status sx_lp_norm(const sx_function* f, double p, double* value) {
  return guarded([&] {
    require(f, "f");
    require(value, "value");
    *value = subexp::lp_norm(f->f, p);
  });
}

sx_status sx_multiply(const sx_function* f, const sx_function* g, sx_function** out) {
  return guarded([&] {
    require(f, "f");
    require(g, "g");
    require(out, "out");
    *out = wrap(subexp::multiply(f->f, g->f));
  });
}

sx_status sx_compose(const char* name, const sx_function* u, sx_function** out) {
  return guarded([&] {
    require(name, "name");
    require(u, "u");
    require(out, "out");
    *out = wrap(subexp::compose(name, u->f));
  });
}

sx_status sx_analyze_weight(double* t0, double* p0) {
  return guarded([&] {
    const subexp::WeightAnalysis a = subexp::analyze_weight();
    if (t0) *t0 = a.t0;
    if (p0) *p0 = a.p0;
  });
}

sx_status sx_weight_eval(const char* weight, const double* k, int n, double* value) {
  return guarded([&] {
    require(weight, "weight");
    require(k, "k");
    require(value, "value");
    if (n < 1) throw subexp::InvalidArgument("n must be >= 1");
    *value = subexp::weight_eval(subexp::parse_weight(weight), std::span<const double>(k, static_cast<std::size_t>(n)));
  });
}

sx_status sx_upper_incomplete_gamma(double alpha, double t, double* value) {
  return guarded([&] {
    require(value, "value");
    *value = subexp::upper_incomplete_gamma(alpha, t);
  });
}

sx_status sx_inverse_g(double alpha, double u, double* value) {
  return guarded([&] {
    require(value, "value");
    *value = subexp::inverse_g(alpha, u);
  });
}

sx_status sx_constants_table(char** json) {
  return guarded([&] {
    require(json, "json");
    *json = dup_string(subexp::constants_table().dump(2));
  });
}

sx_status sx_up_eval(double x, sx_up_method method, double* value) {
  return guarded([&] {
    require(value, "value");
    if (method != SX_UP_CONVOLUTION && method != SX_UP_FOURIER) throw subexp::InvalidArgument("unknown up method");
    *value = subexp::up_eval(x, method == SX_UP_FOURIER ? subexp::UpMethod::Fourier : subexp::UpMethod::Convolution);
  });
}

sx_status sx_up_fourier(double xi, double* re, double* im) {
  return guarded([&] {
    const auto v = subexp::up_fourier(xi).value;
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

sx_status sx_gevrey_bump(double mu, double t, double* value) {
  return guarded([&] {
    require(value, "value");
    *value = subexp::gevrey_bump(mu, t);
  });
}

sx_status sx_gevrey_bump_fourier(double mu, double xi, double* re, double* im) {
  return guarded([&] {
    const auto v = subexp::gevrey_bump_fourier(mu, xi);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

sx_status sx_verify(const char* family, const char* profile, const char* overrides_json, char** report_json,
                    int* passed) {
  return guarded([&] {
    require(family, "family");
    require(report_json, "report_json");
    emit(subexp::verify_family(family, profile ? profile : "quick", parse_optional(overrides_json)), report_json,
         passed);
  });
}

sx_status sx_default_options(const char* family, const char* profile, char** json) {
  return guarded([&] {
    require(family, "family");
    require(json, "json");
    *json = dup_string(subexp::default_options(family, profile ? profile : "quick").dump(2));
  });
}

sx_status sx_special_check(const char* which, const char* overrides_json, char** report_json, int* passed) {
  return guarded([&] {
    require(which, "which");
    require(report_json, "report_json");
    emit(subexp::special_check(which, parse_optional(overrides_json)), report_json, passed);
  });
}

sx_status sx_weight_inequality(const char* kind, const char* params_json, char** report_json, int* passed) {
  return guarded([&] {
    require(kind, "kind");
    require(report_json, "report_json");
    emit(subexp::to_json(subexp::verify_weight_inequality(kind, parse_optional(params_json))), report_json, passed);
  });
}

sx_status sx_corpus_generate(const char* dir, uint64_t seed, int count, const char* spec_json, char** manifest_json) {
  return guarded([&] {
    require(dir, "dir");
    const Json m = subexp::corpus_generate(dir, seed, count, subexp::corpus_spec_from_json(parse_optional(spec_json)));
    if (manifest_json) *manifest_json = dup_string(m.dump(2));
  });
}

sx_status sx_report_merge(const char* dir, char** summary_json) {
  return guarded([&] {
    require(dir, "dir");
    require(summary_json, "summary_json");
    *summary_json = dup_string(subexp::report_merge(dir).dump(2));
  });
}

sx_status sx_environment(char** json) {
  return guarded([&] {
    require(json, "json");
    *json = dup_string(subexp::environment_fingerprint().dump(2));
  });
}

}  // extern "C"
