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
#include <utility>
#include <vector>

#include "ptrack/geom.hpp"

namespace ptrack {

// Single-channel image with intensities in [0, 1], row-major doubles.
// Sampling uses the continuous-coordinate convention from geom.hpp: pixel
// (i, j) has its center at (i+0.5, j+0.5). Out-of-bounds access replicates
// the border.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  GrayImage() = default;
  GrayImage(int w, int h, double fill = 0.0)
      : width(w), height(h), data(size_t(w) * size_t(h), fill) {}

  bool empty() const { return width <= 0 || height <= 0; }

  double& at(int x, int y) {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return data[size_t(y) * width + x];
  }
  double at(int x, int y) const {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return data[size_t(y) * width + x];
  }

  double at_clamped(int x, int y) const;

  // Bilinear interpolation at a continuous position.
  double sample(double x, double y) const;
};

// Resamples a rotated, scaled rectangular region into a patch of fixed size.
// The region is centered at `center`, spans base_w x base_h pixels before
// scaling, and is rotated by rotation_deg; output pixel (u, v) samples the
// source at center + R * diag(scale) * offset(u, v). With scale 1, rotation
// 0 and out size equal to the base size this is an exact pixel copy for
// integer-aligned regions.
GrayImage extract_patch(const GrayImage& img, Point2 center, double base_w,
                        double base_h, double scale, double rotation_deg,
                        int out_w, int out_h);

// Central-difference gradients, borders replicated. Returns {gx, gy}.
std::pair<GrayImage, GrayImage> gradient(const GrayImage& img);

// Halving pyramid built with 2x2 box averaging. Level 0 is the input
// image itself. Stops early when a level would shrink below 4 pixels on
// either side, so the result may have fewer than `levels` entries.
std::vector<GrayImage> pyramid(const GrayImage& img, int levels);

}  // namespace ptrack
