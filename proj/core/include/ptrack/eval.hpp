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

#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "ptrack/geom.hpp"

namespace ptrack {

// Tracking accuracy metrics and evaluation protocol.
//
// Two per-frame errors are used everywhere:
//  - alignment error: RMS distance over the four corresponding corners;
//  - overlap (Jaccard) error: 1 - intersection/union of the two quads,
//    computed by exact convex polygon clipping.
// A frame where the tracker reported itself lost scores the worst possible
// value on both (+inf alignment, 1.0 overlap error) and never counts as a
// success at any threshold.

double alignment_error(const CornerQuad& tracked, const CornerQuad& gt);
double jaccard_error(const CornerQuad& tracked, const CornerQuad& gt);

struct FrameResult {
  int frame = 0;
  bool lost = false;
  double e_al = 0.0;
  double e_jac = 0.0;
};

// Builds a FrameResult, applying the lost-frame sentinel values.
FrameResult score_frame(int frame, bool lost, const CornerQuad& tracked,
                        const CornerQuad& gt);

struct SubsequenceRun {
  int init_frame = 0;
  std::vector<FrameResult> frames;  // frames after the init frame
};

enum class Metric { Alignment, Jaccard };

// The standard threshold grid: 0, 0.5, 1, ..., 20 (pixels).
std::vector<double> default_thresholds();

struct Curve {
  Metric metric = Metric::Alignment;
  size_t runs = 0;
  size_t frames = 0;  // frames that entered the accounting
  std::optional<double> fail_stop_tau;
  std::vector<std::pair<double, double>> points;  // (threshold, fraction)
};

// Fraction of frames whose error is within each threshold, pooled over all
// runs. With fail_stop_tau set, frames after a run's first failure
// (alignment error above the given value, or a lost frame) are excluded
// from that run's accounting; the failing frame itself still counts.
Curve success_curve(std::span<const SubsequenceRun> runs,
                    std::span<const double> thresholds, Metric metric,
                    std::optional<double> fail_stop_tau = std::nullopt);

// Fraction of runs that never fail: a run fails at threshold tau on its
// first frame with alignment error above tau (lost frames always fail).
Curve robustness_curve(std::span<const SubsequenceRun> runs,
                       std::span<const double> thresholds);

// Trapezoidal area under the curve, normalized by the threshold span.
double auc(const Curve& c);

// Init frames for the repeated-initialization protocol: floor(i*L/k) for
// i = 0..k-1, deduplicated for short sequences (L <= k collapses to {0}).
std::vector<int> subsequence_inits(int length, int k);

// Frames actually evaluated: sum over inits of (length - init - 1), i.e.
// every frame after each init frame.
long effective_frames(int length, std::span<const int> inits);

// Frames consumed including each run's init frame: sum of (length - init).
long run_frames(int length, std::span<const int> inits);

// CSV emission: one metadata comment line, a header, then threshold,value
// rows.
void write_curve_csv(std::ostream& os, const Curve& c, const char* name);

}  // namespace ptrack
