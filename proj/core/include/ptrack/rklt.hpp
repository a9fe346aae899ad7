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

#ifndef PTRACK_RKLT_HPP_
#define PTRACK_RKLT_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ptrack/geom.hpp"
#include "ptrack/ic.hpp"
#include "ptrack/image.hpp"
#include "ptrack/klt.hpp"

namespace ptrack {

struct RansacConfig {
  double thresh = 2.0;      // inlier reprojection error bound, px
  double confidence = 0.99; // drives the adaptive iteration count
  int max_iters = 500;
  int min_inliers = 8;      // consensus below this reports failure
};

struct RansacResult {
  SimilarityParams params;       // refit on the winning consensus set
  std::vector<uint8_t> inliers;  // per input pair, from the winning
                                 // hypothesis (before the refit)
  int inlier_count = 0;
};

// Robust similarity fit from point pairs src[i] -> dst[i]. Minimal samples
// of two pairs (redrawn while the two source points are closer than 1 px);
// inliers are pairs with reprojection error strictly below cfg.thresh; the
// iteration count adapts to the best inlier ratio. Returns nullopt for
// fewer than two pairs or a best consensus below cfg.min_inliers.
// Deterministic for a given rng state.
std::optional<RansacResult> ransac_similarity(std::span<const Point2> src,
                                              std::span<const Point2> dst,
                                              const RansacConfig& cfg,
                                              std::mt19937_64& rng);

struct RkltConfig {
  int grid = 10;            // reference points per side
  RansacConfig ransac;
  KltConfig klt;
  IcConfig ic;
  double min_ncc = 0.2;     // refined score below this reports loss
  uint64_t seed = 1;
};

struct RkltDiagnostics {
  int tracked_points = 0;   // grid points the point tracker kept
  int inliers = 0;          // consensus size (0 when RANSAC failed)
  double ncc = 0.0;         // refined template correlation
  int ic_iters = 0;
};

struct RkltResult {
  bool lost = false;        // RANSAC failure or ncc < min_ncc
  CornerQuad quad;          // current estimate even when lost
  RkltDiagnostics diag;
};

// Two-layer tracker. Layer 1 tracks a fixed reference grid with the
// pyramidal point tracker (frame to frame) and fits a similarity by RANSAC
// against the reference grid itself, so the estimate cannot accumulate
// drift. Layer 2 refines that candidate against the frame-0 template with
// masked NCC alignment, the mask being the union of squares of side
// 2*ransac_thresh+1 around inlier grid points. The warp family is chosen
// by `dof`; layer 1's similarity is projected onto it (translation only
// for 2 DoF, translation+scale for 3, embedded for 6/8).
class RkltTracker {
 public:
  // The region must have positive area and at least 16 px per side; the
  // template is the region rectified to an axis-aligned patch at native
  // resolution.
  RkltTracker(const GrayImage& frame, const CornerQuad& region, DofModel dof,
              const RkltConfig& cfg = {});

  // Advances one frame. A lost result keeps the last warp estimate and the
  // tracker keeps trying on subsequent frames.
  RkltResult track(const GrayImage& frame);

  DofModel dof() const { return dof_; }
  const WarpMatrix& warp() const { return warp_; }
  const IcTemplate& reference_template() const { return tmpl_; }
  std::span<const Point2> reference_grid() const { return ref_grid_; }
  CornerQuad quad() const;

 private:
  RkltConfig cfg_;
  DofModel dof_;
  IcTemplate tmpl_;
  int tmpl_w_ = 0, tmpl_h_ = 0;
  std::vector<Point2> ref_grid_;  // centered template coordinates
  WarpMatrix warp_;               // template -> current frame
  GrayImage prev_;
  std::mt19937_64 rng_;
};

}  // namespace ptrack

#endif  // PTRACK_RKLT_HPP_
