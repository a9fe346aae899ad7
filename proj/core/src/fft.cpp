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

#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace ptrack::detail {

namespace {

// One cached FFTW plan pair per grid shape, with dedicated buffers. All
// execution happens through these buffers under the cache mutex; the grids
// involved are small, so serializing the transforms is not a bottleneck.
struct ShapePlans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  size_t n = 0;
};

std::mutex g_mutex;
std::map<std::pair<int, int>, ShapePlans>& plan_cache() {
  static auto* cache = new std::map<std::pair<int, int>, ShapePlans>();
  return *cache;
}

ShapePlans& plans_for(int w, int h) {
  auto& cache = plan_cache();
  auto it = cache.find({w, h});
  if (it != cache.end()) return it->second;

  ShapePlans p;
  p.n = size_t(w) * h;
  p.in = fftw_alloc_complex(p.n);
  p.out = fftw_alloc_complex(p.n);
  // FFTW takes (rows, cols) for row-major data.
  p.fwd = fftw_plan_dft_2d(h, w, p.in, p.out, FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_2d(h, w, p.in, p.out, FFTW_BACKWARD, FFTW_ESTIMATE);
  return cache.emplace(std::make_pair(w, h), p).first->second;
}

}  // namespace

std::vector<std::complex<double>> dft2(const double* in, int w, int h) {
  std::lock_guard<std::mutex> lock(g_mutex);
  ShapePlans& p = plans_for(w, h);
  for (size_t i = 0; i < p.n; ++i) {
    p.in[i][0] = in[i];
    p.in[i][1] = 0.0;
  }
  fftw_execute(p.fwd);
  std::vector<std::complex<double>> out(p.n);
  std::memcpy(out.data(), p.out, p.n * sizeof(fftw_complex));
  return out;
}

std::vector<double> idft2_real(const std::complex<double>* in, int w, int h) {
  std::lock_guard<std::mutex> lock(g_mutex);
  ShapePlans& p = plans_for(w, h);
  std::memcpy(p.in, in, p.n * sizeof(fftw_complex));
  fftw_execute(p.bwd);
  std::vector<double> out(p.n);
  const double scale = 1.0 / double(p.n);
  for (size_t i = 0; i < p.n; ++i) out[i] = p.out[i][0] * scale;
  return out;
}

}  // namespace ptrack::detail
