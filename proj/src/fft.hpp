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

#ifndef SUBEXP_SRC_FFT_HPP
#define SUBEXP_SRC_FFT_HPP

#include <complex>
#include <vector>

namespace subexp::detail {

// Unnormalized in-place DFT over an n-dimensional cube of side N (row-major).
// sign = -1 computes sum_j x_j e^{-2 pi i jm/N}; sign = +1 the inverse kernel.
void fft_inplace(std::vector<std::complex<double>>& data, int n, int N, int sign);

}  // namespace subexp::detail

#endif  // SUBEXP_SRC_FFT_HPP
