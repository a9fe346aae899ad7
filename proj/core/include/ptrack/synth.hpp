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

#include <cstdint>
#include <string>
#include <vector>

#include "ptrack/geom.hpp"
#include "ptrack/image.hpp"

namespace ptrack {

// Synthetic sequences with exact analytic ground truth, used as tracking
// oracles in tests and by the CLI generator. A textured target moves over a
// background along a similarity trajectory; optional degradations are
// applied per frame in a fixed order: warp, illumination, blur, noise,
// occlusion. Ground truth is always the analytic warped quad, never
// measured from the rendered pixels.

struct Occluder {
  int first_frame = 0;
  int last_frame = -1;  // inclusive
  double x = 0, y = 0, w = 0, h = 0;  // axis-aligned, image coordinates
  double intensity = 0.5;
};

struct SynthSpec {
  GrayImage texture;     // target appearance, sampled about its center
  GrayImage background;  // also fixes the frame size
  std::vector<SimilarityParams> trajectory;  // target pose per frame
  std::vector<std::pair<double, double>> illum;  // per-frame (gain, bias)
  int blur_radius = 0;      // box blur half-width, 0 disables
  double noise_sigma = 0.0; // Gaussian, in intensity units
  std::vector<Occluder> occluders;
  uint64_t seed = 0;        // drives the noise only
};

struct SynthSequence {
  std::vector<GrayImage> frames;
  std::vector<CornerQuad> gt;
};

// Renders the whole sequence. Frames are deterministic functions of
// (spec, seed, frame index). Throws Error if a pose places the target
// entirely outside the frame, or on shape/length mismatches.
SynthSequence render(const SynthSpec& spec);

// Ground-truth quad for one trajectory entry (texture rectangle centered at
// the origin, warped by the pose).
CornerQuad synth_gt_quad(const SynthSpec& spec, int frame);

struct TrajectoryCaps {
  double max_step_px = 1.0;        // per-frame |dx|, |dy| bound
  double max_scale_step = 0.01;    // per-frame |s_t/s_{t-1} - 1| bound
  double max_rot_step_deg = 0.5;   // per-frame rotation delta bound
};

// Bounded random walk starting at `start`; scale stays within [0.5, 2].
std::vector<SimilarityParams> random_trajectory(int n, uint64_t seed,
                                                const SimilarityParams& start,
                                                const TrajectoryCaps& caps);

// Procedural textures.
GrayImage checkerboard(int w, int h, int square, double lo, double hi);
// Band-limited noise: seeded white noise box-blurred `smooth_radius` wide,
// then rescaled to span [lo, hi].
GrayImage noise_texture(int w, int h, uint64_t seed, int smooth_radius,
                        double lo, double hi);

// Writes frame%05d.png plus gt.txt (8 full-precision reals per line) into
// an existing or creatable directory, the layout the dataset loader reads.
void export_sequence(const SynthSequence& seq, const std::string& dir);

}  // namespace ptrack
