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

#include "ptrack/rsst.hpp"

#include <algorithm>
#include <cmath>

#include "ptrack/error.hpp"

namespace ptrack {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLowConfidencePeak = 0.1;

// Rounds a pixel extent to a whole number of cells, at least two.
int round_to_cells(double px, int cell) {
  const int cells = std::max(2, int(std::lround(px / cell)));
  return cells * cell;
}

double edge_length(Point2 a, Point2 b) { return norm(b - a); }

// In-plane angle of the quad: direction of the mean top/bottom edge.
double quad_angle_deg(const CornerQuad& q) {
  const Point2 top = q.pts[1] - q.pts[0];
  const Point2 bot = q.pts[2] - q.pts[3];
  return std::atan2(top.y + bot.y, top.x + bot.x) * 180.0 / kPi;
}

// Hann weight per circular bin index: bin j holds offset
// k = (j <= n/2 ? j : j - n), and the window is Hann over the offsets in
// natural order.
std::vector<double> circular_hann(int n) {
  const Grid h = cosine_window(n, 1);
  const int half = (n - 1) / 2;
  std::vector<double> w(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const int k = (j <= n / 2) ? j : j - n;
    w[size_t(j)] = h.v[size_t(k + half)];
  }
  return w;
}

// Integer circular offset of the strict 1-D argmax (ties -> lowest index).
int wrapped_argmax(const Grid& g) {
  int best = 0;
  for (int j = 1; j < g.w; ++j) {
    if (g.v[size_t(j)] > g.v[size_t(best)]) best = j;
  }
  return (best <= g.w / 2) ? best : best - g.w;
}

double variance(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= double(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return var / double(v.size());
}

void validate_config(const RsstConfig& c) {
  if (c.n_scales < 3 || c.n_scales % 2 == 0) {
    throw Error("rsst: n_scales must be odd and >= 3");
  }
  if (!(c.scale_step > 1.0)) throw Error("rsst: scale_step must exceed 1");
  if (!(c.rot_step > 0.0) || !(c.rot_range >= c.rot_step)) {
    throw Error("rsst: rotation range/step invalid");
  }
  const double bins = c.rot_range / c.rot_step;
  if (std::abs(bins - std::round(bins)) > 1e-9) {
    throw Error("rsst: rot_range must be a multiple of rot_step");
  }
  if (!(c.padding >= 1.0)) throw Error("rsst: padding must be >= 1");
  if (!(c.eta > 0.0) || !(c.eta <= 1.0)) throw Error("rsst: eta outside (0,1]");
  if (c.lambda < 0.0) throw Error("rsst: lambda must be >= 0");
  if (c.cell < 1) throw Error("rsst: cell must be positive");
  if (c.template_max_side < 2 * c.cell || c.sample_max_side < 2 * c.cell) {
    throw Error("rsst: patch caps must cover at least two cells");
  }
}

}  // namespace

RsstTracker::RsstTracker(const GrayImage& frame, const CornerQuad& region,
                         const RsstConfig& cfg)
    : cfg_(cfg) {
  validate_config(cfg_);
  if (frame.empty()) throw Error("rsst: empty frame");
  if (region.area() <= 0.0) throw Error("rsst: region has non-positive area");

  init_w_ = 0.5 * (edge_length(region.pts[0], region.pts[1]) +
                   edge_length(region.pts[3], region.pts[2]));
  init_h_ = 0.5 * (edge_length(region.pts[0], region.pts[3]) +
                   edge_length(region.pts[1], region.pts[2]));
  if (std::min(init_w_, init_h_) < 16.0) {
    throw Error("rsst: region smaller than 16 px per side");
  }

  pose_.center = region.centroid();
  pose_.scale = 1.0;
  pose_.rotation_deg = quad_angle_deg(region);
  if (pose_.center.x < 0.0 || pose_.center.x > frame.width ||
      pose_.center.y < 0.0 || pose_.center.y > frame.height) {
    throw Error("rsst: region centroid outside the frame");
  }

  scale_min_ = std::max(0.05, 8.0 / std::min(init_w_, init_h_));
  scale_max_ = std::max(
      scale_min_, std::min(frame.width / init_w_, frame.height / init_h_));

  // Translation search patch: padding x target, capped to template_max_side
  // and snapped to whole cells.
  search_w_ = cfg_.padding * init_w_;
  search_h_ = cfg_.padding * init_h_;
  const double model_scale =
      std::min(1.0, cfg_.template_max_side / std::max(search_w_, search_h_));
  trans_out_w_ = round_to_cells(search_w_ * model_scale, cfg_.cell);
  trans_out_h_ = round_to_cells(search_h_ * model_scale, cfg_.cell);
  const int cw = trans_out_w_ / cfg_.cell;
  const int ch = trans_out_h_ / cfg_.cell;
  trans_window_ = cosine_window(cw, ch);
  const Grid trans_label =
      gaussian_label(cw, ch, init_w_ * model_scale / cfg_.cell / 16.0,
                     init_h_ * model_scale / cfg_.cell / 16.0);

  // Scale/rotation samples: target-sized patches resampled to a common
  // small template.
  const double sample_scale =
      std::min(1.0, cfg_.sample_max_side / std::max(init_w_, init_h_));
  sample_w_ = round_to_cells(init_w_ * sample_scale, cfg_.cell);
  sample_h_ = round_to_cells(init_h_ * sample_scale, cfg_.cell);

  n_rot_ = 2 * int(std::lround(cfg_.rot_range / cfg_.rot_step)) + 1;
  rot_half_ = (n_rot_ - 1) / 2;
  scale_weight_ = circular_hann(cfg_.n_scales);
  rot_weight_ = circular_hann(n_rot_);
  const Grid scale_label =
      gaussian_label(cfg_.n_scales, 1, cfg_.n_scales / 16.0, 1.0);
  const Grid rot_label = gaussian_label(n_rot_, 1, n_rot_ / 16.0, 1.0);

  low_confidence_ = variance(translation_patch(frame, pose_).data) < 1e-12;

  trans_model_ = dcf_train_init(translation_features(frame, pose_),
                                trans_label, cfg_.lambda);
  scale_model_ =
      dcf_train_init(scale_features(frame, pose_), scale_label, cfg_.lambda);
  rot_model_ =
      dcf_train_init(rotation_features(frame, pose_), rot_label, cfg_.lambda);
}

GrayImage RsstTracker::translation_patch(const GrayImage& frame,
                                         const RsstPose& pose) const {
  return extract_patch(frame, pose.center, search_w_, search_h_, pose.scale,
                       pose.rotation_deg, trans_out_w_, trans_out_h_);
}

FeatureMap RsstTracker::translation_features(const GrayImage& frame,
                                             const RsstPose& pose) const {
  FeatureMap f = hog(translation_patch(frame, pose), cfg_.cell);
  apply_window(f, trans_window_);
  return f;
}

FeatureMap RsstTracker::sample_row_features(
    const GrayImage& frame, const std::vector<RsstPose>& poses,
    const std::vector<double>& bin_weight) const {
  const int n = int(poses.size());
  const int half = (n - 1) / 2;
  FeatureMap row;
  for (int i = 0; i < n; ++i) {
    const RsstPose& s = poses[size_t(i)];
    const GrayImage patch =
        extract_patch(frame, s.center, init_w_, init_h_, s.scale,
                      s.rotation_deg, sample_w_, sample_h_);
    const FeatureMap f = hog(patch, cfg_.cell);
    if (row.d == 0) row = FeatureMap(n, 1, int(f.data.size()));
    const int j = (i - half + n) % n;  // offset i-half stored circularly
    const double w = bin_weight[size_t(j)];
    for (size_t l = 0; l < f.data.size(); ++l) {
      row.data[l * size_t(n) + size_t(j)] = f.data[l] * w;
    }
  }
  return row;
}

FeatureMap RsstTracker::scale_features(const GrayImage& frame,
                                       const RsstPose& pose) const {
  std::vector<RsstPose> poses;
  const int half = (cfg_.n_scales - 1) / 2;
  poses.reserve(size_t(cfg_.n_scales));
  for (int k = -half; k <= half; ++k) {
    poses.push_back({pose.center, pose.scale * std::pow(cfg_.scale_step, k),
                     pose.rotation_deg});
  }
  return sample_row_features(frame, poses, scale_weight_);
}

FeatureMap RsstTracker::rotation_features(const GrayImage& frame,
                                          const RsstPose& pose) const {
  std::vector<RsstPose> poses;
  poses.reserve(size_t(n_rot_));
  for (int k = -rot_half_; k <= rot_half_; ++k) {
    poses.push_back(
        {pose.center, pose.scale, pose.rotation_deg + k * cfg_.rot_step});
  }
  return sample_row_features(frame, poses, rot_weight_);
}

CornerQuad RsstTracker::track(const GrayImage& frame) {
  if (frame.empty()) throw Error("rsst: empty frame");

  // Translation at the previous scale and rotation.
  {
    const Grid resp =
        dcf_respond(trans_model_, translation_features(frame, pose_));
    const PeakEstimate peak = peak_locate(resp);
    last_peak_ = peak.value;
    low_confidence_ = peak.value < kLowConfidencePeak;
    // Peak offset in cells -> search patch px -> image px along the rotated
    // patch axes.
    const double px = peak.x * cfg_.cell * search_w_ * pose_.scale /
                      trans_out_w_;
    const double py = peak.y * cfg_.cell * search_h_ * pose_.scale /
                      trans_out_h_;
    const double th = pose_.rotation_deg * kPi / 180.0;
    pose_.center.x += std::cos(th) * px - std::sin(th) * py;
    pose_.center.y += std::sin(th) * px + std::cos(th) * py;
    pose_.center.x = std::clamp(pose_.center.x, 0.0, double(frame.width));
    pose_.center.y = std::clamp(pose_.center.y, 0.0, double(frame.height));
  }

  // Scale at the new position, previous rotation.
  {
    const Grid resp = dcf_respond(scale_model_, scale_features(frame, pose_));
    const PeakEstimate peak = peak_locate(resp);
    pose_.scale = std::clamp(pose_.scale * std::pow(cfg_.scale_step, peak.x),
                             scale_min_, scale_max_);
  }

  // Rotation at the new position and scale; bin-resolution estimate.
  {
    const Grid resp =
        dcf_respond(rot_model_, rotation_features(frame, pose_));
    pose_.rotation_deg += wrapped_argmax(resp) * cfg_.rot_step;
  }

  trans_model_ =
      dcf_update(trans_model_, translation_features(frame, pose_), cfg_.eta);
  scale_model_ =
      dcf_update(scale_model_, scale_features(frame, pose_), cfg_.eta);
  rot_model_ =
      dcf_update(rot_model_, rotation_features(frame, pose_), cfg_.eta);
  return quad();
}

CornerQuad RsstTracker::quad() const {
  const WarpMatrix w = params_to_matrix(
      {pose_.center.x, pose_.center.y, pose_.scale, pose_.rotation_deg});
  return apply_warp(w, make_rect(-init_w_ / 2.0, -init_h_ / 2.0, init_w_,
                                 init_h_));
}

}  // namespace ptrack
