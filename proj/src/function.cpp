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

#include "subexp/function.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "rng.hpp"

namespace subexp {

namespace {

bool is_power_of_two(int N) { return N > 0 && (N & (N - 1)) == 0; }

std::size_t total_size(int n, int N) {
  return n == 1 ? static_cast<std::size_t>(N) : static_cast<std::size_t>(N) * static_cast<std::size_t>(N);
}

// (-1)^(m1 + m2) for the storage index, the phase of e^{i xi_m L}.
double parity(std::size_t flat, int n, int N) {
  long m = Spectrum::signed_index(static_cast<int>(flat % N), N);
  if (n == 2) m += Spectrum::signed_index(static_cast<int>(flat / N), N);
  return (m % 2 == 0) ? 1.0 : -1.0;
}

void append_double(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InvalidArgument("malformed number '" + std::string(s) + "'");
  return v;
}

}  // namespace

double SampledFunction::xi(int m) const { return std::numbers::pi * m / L; }

bool SampledFunction::same_grid(const SampledFunction& o) const { return n == o.n && N == o.N && L == o.L; }

bool SampledFunction::is_real(double tol) const {
  for (const auto& v : values)
    if (std::abs(v.imag()) > tol) return false;
  return true;
}

SampledFunction make_function(int n, double L, int N) {
  if (n != 1 && n != 2) throw InvalidArgument("dimension must be 1 or 2");
  if (!(L > 0.0) || !std::isfinite(L)) throw InvalidArgument("half width L must be positive");
  if (!is_power_of_two(N) || N < 2) throw InvalidArgument("N must be a power of two >= 2");
  SampledFunction f;
  f.n = n;
  f.L = L;
  f.N = N;
  f.values.assign(total_size(n, N), cplx{});
  return f;
}

cplx Spectrum::fourier_transform(std::size_t flat) const {
  const double scale = std::pow(2.0 * L, n) / std::pow(2.0 * std::numbers::pi, 0.5 * n);
  return coeffs.at(flat) * scale;
}

Spectrum spectrum(const SampledFunction& f) {
  Spectrum s{f.n, f.L, f.N, f.values};
  detail::fft_inplace(s.coeffs, f.n, f.N, -1);
  const double inv = 1.0 / static_cast<double>(s.coeffs.size());
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] *= parity(i, f.n, f.N) * inv;
  return s;
}

SampledFunction from_spectrum(const Spectrum& s, const SampledFunction& like) {
  if (s.n != like.n || s.N != like.N || s.L != like.L) throw InvalidArgument("spectrum grid mismatch");
  SampledFunction f = like;
  f.values = s.coeffs;
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] *= parity(i, s.n, s.N);
  detail::fft_inplace(f.values, s.n, s.N, +1);
  return f;
}

SampledFunction synthesize(const std::string& kind, int n, double L, int N, const SynthParams& params,
                           std::uint64_t seed) {
  SampledFunction f = make_function(n, L, N);
  f.kind = kind;
  f.seed = seed;
  if (kind == "zero") return f;
  if (kind == "mode") {
    if (params.k.size() != static_cast<std::size_t>(n)) throw InvalidArgument("mode needs a frequency per axis");
    for (std::size_t i = 0; i < f.size(); ++i) {
      double phase = params.k[0] * f.x(static_cast<int>(i % N));
      if (n == 2) phase += params.k[1] * f.x(static_cast<int>(i / N));
      f.values[i] = params.c * cplx(std::cos(phase), std::sin(phase));
    }
    return f;
  }
  if (kind == "gaussian") {
    if (!(params.a > 0.0)) throw InvalidArgument("gaussian requires a > 0");
    for (std::size_t i = 0; i < f.size(); ++i) {
      double r2 = std::pow(f.x(static_cast<int>(i % N)), 2);
      if (n == 2) r2 += std::pow(f.x(static_cast<int>(i / N)), 2);
      f.values[i] = std::exp(-params.a * r2);
    }
    return f;
  }
  if (kind == "random_bandlimited") {
    const double nyquist = std::numbers::pi * (N / 2) / L;
    if (!(params.band >= 0.0) || params.band >= nyquist)
      throw InvalidArgument("band must lie below the grid Nyquist frequency");
    Spectrum s{n, L, N, std::vector<cplx>(f.size())};
    const int mmax = static_cast<int>(std::floor(params.band * L / std::numbers::pi));
    const auto coeff = [&](int m1, int m2) {
      // Keyed by (seed, m) only, so the same function is produced on any grid containing the band.
      detail::SplitMix64 rng(seed * 0x9E3779B97F4A7C15ULL ^ (static_cast<std::uint64_t>(m1 + 4096) << 20) ^
                             static_cast<std::uint64_t>(m2 + 4096));
      rng.next();
      const double re = rng.normal(), im = rng.normal();
      const double r = std::hypot(std::numbers::pi * m1 / L, std::numbers::pi * m2 / L);
      return cplx(re, im) * (std::exp(-params.decay * r) / std::numbers::sqrt2);
    };
    const int m2max = n == 2 ? mmax : 0;
    for (int m2 = -m2max; m2 <= m2max; ++m2) {
      for (int m1 = -mmax; m1 <= mmax; ++m1) {
        const double r = std::hypot(std::numbers::pi * m1 / L, std::numbers::pi * m2 / L);
        if (r > params.band) continue;
        cplx c;
        if (params.real) {
          const bool canonical = m2 > 0 || (m2 == 0 && m1 >= 0);
          c = canonical ? coeff(m1, m2) : std::conj(coeff(-m1, -m2));
          if (m1 == 0 && m2 == 0) c = c.real();
        } else {
          c = coeff(m1, m2);
        }
        const std::size_t idx = static_cast<std::size_t>((m1 + N) % N) +
                                (n == 2 ? static_cast<std::size_t>((m2 + N) % N) * N : 0);
        s.coeffs[idx] = c;
      }
    }
    SampledFunction g = from_spectrum(s, f);
    if (params.real)
      for (auto& v : g.values) v = v.real();
    return g;
  }
  throw InvalidArgument("unknown synthesis kind '" + kind + "'");
}

std::string serialize_function(const SampledFunction& f) {
  Json header = {{"n", f.n}, {"L", f.L}, {"N", f.N}, {"kind", f.kind}, {"seed", f.seed}};
  std::string out = header.dump();
  out.push_back('\n');
  out.reserve(out.size() + f.size() * 48);
  for (std::size_t i = 0; i < f.size(); ++i) {
    out += std::to_string(i);
    out.push_back(',');
    append_double(out, f.values[i].real());
    out.push_back(',');
    append_double(out, f.values[i].imag());
    out.push_back('\n');
  }
  return out;
}

SampledFunction parse_function(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("empty function file");
  Json header;
  try {
    header = Json::parse(line);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad function header: ") + e.what());
  }
  SampledFunction f;
  try {
    f = make_function(header.at("n").get<int>(), header.at("L").get<double>(), header.at("N").get<int>());
    f.kind = header.value("kind", std::string("custom"));
    f.seed = header.value("seed", std::uint64_t{0});
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad function header: ") + e.what());
  }
  std::vector<bool> seen(f.size(), false);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw InvalidArgument("malformed row: " + line);
    const std::string_view v(line);
    std::size_t idx = 0;
    const auto res = std::from_chars(v.data(), v.data() + c1, idx);
    if (res.ec != std::errc() || res.ptr != v.data() + c1 || idx >= f.size() || seen[idx])
      throw InvalidArgument("bad or repeated grid index in row: " + line);
    seen[idx] = true;
    f.values[idx] = {parse_double(v.substr(c1 + 1, c2 - c1 - 1)), parse_double(v.substr(c2 + 1))};
    ++rows;
  }
  if (rows != f.size()) throw InvalidArgument("function file has " + std::to_string(rows) + " rows, expected " +
                                              std::to_string(f.size()));
  return f;
}

void save_function(const SampledFunction& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << serialize_function(f);
  if (!out) throw IoError("write to '" + path + "' failed");
}

SampledFunction load_function(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_function(buf.str());
}

}  // namespace subexp
