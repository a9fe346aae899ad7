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

#include <cassert>
#include <vector>

#include "ptrack/image.hpp"

namespace ptrack {

// Plain real-valued grid (labels, windows, filter responses).
struct Grid {
  int w = 0;
  int h = 0;
  std::vector<double> v;

  Grid() = default;
  Grid(int w_, int h_, double fill = 0.0)
      : w(w_), h(h_), v(size_t(w_) * size_t(h_), fill) {}

  double& at(int x, int y) { return v[size_t(y) * w + x]; }
  double at(int x, int y) const { return v[size_t(y) * w + x]; }
};

// Dense multi-channel feature grid, channel-major storage.
struct FeatureMap {
  int w = 0;
  int h = 0;
  int d = 0;
  std::vector<double> data;

  FeatureMap() = default;
  FeatureMap(int w_, int h_, int d_)
      : w(w_), h(h_), d(d_), data(size_t(w_) * size_t(h_) * size_t(d_), 0.0) {}

  double* channel(int l) { return data.data() + size_t(l) * w * h; }
  const double* channel(int l) const { return data.data() + size_t(l) * w * h; }

  double& at(int l, int x, int y) { return channel(l)[size_t(y) * w + x]; }
  double at(int l, int x, int y) const { return channel(l)[size_t(y) * w + x]; }
};

inline constexpr int kHogBins = 9;       // unsigned orientations over [0, 180)
inline constexpr int kHogChannels = 10;  // 9 orientation bins + cell intensity

// Histogram-of-oriented-gradients cell features.
//
// Per cell of `cell` x `cell` pixels: gradients by central differences,
// gradient magnitude voted bilinearly into the 9 unsigned orientation bins
// (bin centers at k*20 degrees) and bilinearly across the four surrounding
// cells. Cell histograms are normalized over every 2x2 block that contains
// the cell (L2 norm, clipped at 0.2, renormalized) and the block copies
// averaged. Channel 9 carries the mean raw intensity of the cell, so a
// constant patch produces zero orientation channels and a flat intensity
// channel. The patch must span at least two cells per dimension.
FeatureMap hog(const GrayImage& patch, int cell);

// Separable Hann window, 1.0 for a single-element axis.
Grid cosine_window(int w, int h);

// Gaussian regression target with peak value 1 at bin (0, 0) and circular
// (wrap-around) distance, so it is symmetric: g[i] == g[n-i]. A 1-D label
// is the h == 1 case.
Grid gaussian_label(int w, int h, double sigma_x, double sigma_y);

// Multiplies every channel by a window of matching shape.
void apply_window(FeatureMap& f, const Grid& win);

}  // namespace ptrack
