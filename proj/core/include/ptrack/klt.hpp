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

#include <span>
#include <vector>

#include "ptrack/image.hpp"

namespace ptrack {

struct KltConfig {
  int levels = 3;        // pyramid depth
  int window = 11;       // odd window side, pixels
  int max_iters = 30;    // per level
  double epsilon = 0.01; // stop when the update is below this many pixels
  double min_eig = 1e-4; // floor on the normal matrix eigenvalue per pixel
};

enum class PointStatus { Tracked, Lost };

struct TrackedPoint {
  Point2 p;             // position in the next image
  PointStatus status = PointStatus::Lost;
  double residual = 0.0;  // final sum of squared window differences
};

// Pyramidal sparse optical flow: estimates, coarse to fine, a translation
// per point between consecutive images. A point is reported Lost when its
// window lacks texture (minimum eigenvalue of the gradient normal matrix,
// normalized per pixel, under cfg.min_eig), when it leaves the image, or
// when an update step diverges beyond the window size.
std::vector<TrackedPoint> klt_track(const GrayImage& prev,
                                    const GrayImage& next,
                                    std::span<const Point2> pts,
                                    const KltConfig& cfg = {});

}  // namespace ptrack
