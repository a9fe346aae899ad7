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

#ifndef PTRACK_RSST_HPP_
#define PTRACK_RSST_HPP_

#include <vector>

#include "ptrack/dcf.hpp"
#include "ptrack/features.hpp"
#include "ptrack/geom.hpp"
#include "ptrack/image.hpp"

namespace ptrack {

// Rotation/scale/space tracker: three independent correlation filters,
// queried sequentially each frame (translation, then scale, then rotation)
// and all updated at the final pose estimate.
struct RsstConfig {
  double padding = 2.0;         // search region = padding x target size
  double lambda = 0.01;         // filter regularization
  double eta = 0.025;           // model learning rate, (0, 1]
  int template_max_side = 96;   // translation search patch cap, px
  int cell = 4;                 // HOG cell size, px
  int n_scales = 33;            // scale samples, odd
  double scale_step = 1.02;     // ratio between adjacent scale samples
  double rot_range = 20.0;      // rotation samples span +/- rot_range deg
  double rot_step = 2.0;        // spacing between rotation samples, deg
  int sample_max_side = 32;     // scale/rotation sample patch cap, px
};

struct RsstPose {
  Point2 center;
  double scale = 1.0;          // relative to the initial region size
  double rotation_deg = 0.0;   // accumulated, unwrapped
};

class RsstTracker {
 public:
  // Trains the three filters on the initial region. The region must have
  // positive area, a minimum side of 16 px, and its centroid inside the
  // frame. A flat (textureless) region initializes fine but is flagged
  // low-confidence.
  RsstTracker(const GrayImage& frame, const CornerQuad& region,
              const RsstConfig& cfg = {});

  // Advances the pose by one frame and returns the tracked quad. Order per
  // frame: translate at the previous scale/rotation, rescale at the new
  // position, re-rotate at the new position and scale, then update all
  // three models. The center is clamped to the frame.
  CornerQuad track(const GrayImage& frame);

  const RsstPose& pose() const { return pose_; }
  const RsstConfig& config() const { return cfg_; }

  // Current pose applied to the initial rectangle, corners in TL,TR,BR,BL
  // order.
  CornerQuad quad() const;

  // True when the initial region was flat or the latest translation
  // response peaked below 0.1 (weak correlation with the learned model).
  bool low_confidence() const { return low_confidence_; }

  // Peak value of the most recent translation response; 0 before the first
  // track() call.
  double last_peak() const { return last_peak_; }

 private:
  GrayImage translation_patch(const GrayImage& frame,
                              const RsstPose& pose) const;
  FeatureMap translation_features(const GrayImage& frame,
                                  const RsstPose& pose) const;
  // Scale samples centered on pose.scale; rotation samples centered on
  // pose.rotation_deg.
  FeatureMap scale_features(const GrayImage& frame, const RsstPose& pose) const;
  FeatureMap rotation_features(const GrayImage& frame,
                               const RsstPose& pose) const;
  FeatureMap sample_row_features(const GrayImage& frame,
                                 const std::vector<RsstPose>& poses,
                                 const std::vector<double>& bin_weight) const;

  RsstConfig cfg_;
  double init_w_ = 0.0, init_h_ = 0.0;   // initial target size, px
  RsstPose pose_;
  double scale_min_ = 0.0, scale_max_ = 0.0;

  // Translation filter geometry.
  double search_w_ = 0.0, search_h_ = 0.0;  // search region at scale 1, px
  int trans_out_w_ = 0, trans_out_h_ = 0;   // resampled search patch, px
  Grid trans_window_;

  // Scale/rotation sample geometry (shared patch size).
  int sample_w_ = 0, sample_h_ = 0;
  int n_rot_ = 0, rot_half_ = 0;
  std::vector<double> scale_weight_;  // Hann per circular bin index
  std::vector<double> rot_weight_;

  DcfModel trans_model_, scale_model_, rot_model_;
  bool low_confidence_ = false;
  double last_peak_ = 0.0;
};

}  // namespace ptrack

#endif  // PTRACK_RSST_HPP_
