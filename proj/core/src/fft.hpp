// Copyright 2026 The ptrack Authors
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

#pragma once

#include <complex>
#include <vector>

// Thin FFTW3 wrapper, internal to the library. Transforms run at the exact
// grid size (no padding), so odd and prime lengths are handled as-is. Plans
// are cached per shape behind a mutex; ESTIMATE planning keeps them
// deterministic.

namespace ptrack::detail {

// Forward DFT of a real row-major w x h grid (unnormalized).
std::vector<std::complex<double>> dft2(const double* in, int w, int h);

// Inverse DFT returning only the real part, normalized by 1/(w*h).
std::vector<double> idft2_real(const std::complex<double>* in, int w, int h);

}  // namespace ptrack::detail
