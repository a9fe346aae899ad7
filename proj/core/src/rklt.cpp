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

#include "ptrack/rklt.hpp"

#include <algorithm>
#include <cmath>

#include "ptrack/error.hpp"

namespace ptrack {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMinSampleSpread = 1.0;  // px between minimal-sample points

struct RegionGeometry {
  double w = 0.0, h = 0.0;
  Point2 centroid;
  double angle_deg = 0.0;
};

RegionGeometry region_geometry(const CornerQuad& q) {
  RegionGeometry g;
  g.w = 0.5 * (norm(q.pts[1] - q.pts[0]) + norm(q.pts[2] - q.pts[3]));
  g.h = 0.5 * (norm(q.pts[3] - q.pts[0]) + norm(q.pts[2] - q.pts[1]));
  g.centroid = q.centroid();
  const Point2 top = q.pts[1] - q.pts[0];
  const Point2 bot = q.pts[2] - q.pts[3];
  g.angle_deg = std::atan2(top.y + bot.y, top.x + bot.x) * 180.0 / kPi;
  return g;
}

int count_inliers(std::span<const Point2> src, std::span<const Point2> dst,
                  const SimilarityParams& params, double thresh,
                  std::vector<uint8_t>& mask) {
  const WarpMatrix w = params_to_matrix(params);
  int count = 0;
  for (size_t i = 0; i < src.size(); ++i) {
    const Point2 p = apply(w, src[i]);
    const bool in = norm(p - dst[i]) < thresh;
    mask[i] = in ? 1 : 0;
    count += in;
  }
  return count;
}

}  // namespace

std::optional<RansacResult> ransac_similarity(std::span<const Point2> src,
                                              std::span<const Point2> dst,
                                              const RansacConfig& cfg,
                                              std::mt19937_64& rng) {
  if (src.size() != dst.size()) {
    throw Error("ransac_similarity: src/dst size mismatch");
  }
  if (!(cfg.thresh > 0.0)) throw Error("ransac_similarity: thresh must be > 0");
  const size_t n = src.size();
  if (n < 2) return std::nullopt;

  std::vector<uint8_t> mask(n, 0), best_mask(n, 0);
  int best_count = 0;
  int needed = cfg.max_iters;
  int degenerate_streak = 0;

  for (int it = 0; it < needed; ++it) {
    size_t a = size_t(rng() % n);
    size_t b = size_t(rng() % n);
    if (a == b || norm(src[a] - src[b]) < kMinSampleSpread) {
      // Redraw without consuming an iteration; bail out if the input has no
      // usable spread at all.
      --it;
      if (++degenerate_streak > 100) break;
      continue;
    }
    degenerate_streak = 0;

    const Point2 s[2] = {src[a], src[b]};
    const Point2 d[2] = {dst[a], dst[b]};
    SimilarityParams hyp;
    try {
      hyp = fit_similarity(s, d);
    } catch (const Error&) {
      continue;  // coincident destinations
    }
    const int count = count_inliers(src, dst, hyp, cfg.thresh, mask);
    if (count > best_count) {
      best_count = count;
      best_mask = mask;
      // Standard adaptive stopping: enough iterations that drawing an
      // all-inlier minimal sample has probability >= confidence.
      const double w = double(count) / double(n);
      const double p_good = w * w;
      if (p_good >= 1.0) {
        needed = it + 1;
      } else if (p_good > 0.0) {
        const double est =
            std::log(1.0 - cfg.confidence) / std::log(1.0 - p_good);
        needed = std::min(needed, std::max(it + 1, int(std::ceil(est))));
      }
    }
  }

  if (best_count < std::max(2, cfg.min_inliers)) return std::nullopt;

  std::vector<Point2> in_src, in_dst;
  in_src.reserve(size_t(best_count));
  in_dst.reserve(size_t(best_count));
  for (size_t i = 0; i < n; ++i) {
    if (best_mask[i]) {
      in_src.push_back(src[i]);
      in_dst.push_back(dst[i]);
    }
  }
  RansacResult res;
  res.params = fit_similarity(in_src, in_dst);
  res.inliers = std::move(best_mask);
  res.inlier_count = best_count;
  return res;
}

RkltTracker::RkltTracker(const GrayImage& frame, const CornerQuad& region,
                         DofModel dof, const RkltConfig& cfg)
    : cfg_(cfg),
      dof_(dof),
      tmpl_([&] {
        if (frame.empty()) throw Error("rklt: empty frame");
        if (cfg.grid < 3) throw Error("rklt: grid must be >= 3");
        if (region.area() <= 0.0) {
          throw Error("rklt: region has non-positive area");
        }
        const RegionGeometry g = region_geometry(region);
        if (std::min(g.w, g.h) < 16.0) {
          throw Error("rklt: region smaller than 16 px per side");
        }
        // Crop at the rounded size so template pixels are image pixels and
        // the initial warp has exact unit scale.
        const int tw = int(std::lround(g.w));
        const int th = int(std::lround(g.h));
        return IcTemplate(extract_patch(frame, g.centroid, double(tw),
                                        double(th), 1.0, g.angle_deg, tw, th),
                          dof);
      }()),
      prev_(frame),
      rng_(cfg.seed) {
  const RegionGeometry g = region_geometry(region);
  tmpl_w_ = tmpl_.width();
  tmpl_h_ = tmpl_.height();
  warp_ = params_to_matrix({g.centroid.x, g.centroid.y, 1.0, g.angle_deg});

  ref_grid_.reserve(size_t(cfg_.grid) * cfg_.grid);
  for (int j = 0; j < cfg_.grid; ++j) {
    for (int i = 0; i < cfg_.grid; ++i) {
      ref_grid_.push_back(
          {-tmpl_w_ / 2.0 + i * double(tmpl_w_) / (cfg_.grid - 1),
           -tmpl_h_ / 2.0 + j * double(tmpl_h_) / (cfg_.grid - 1)});
    }
  }
}

RkltResult RkltTracker::track(const GrayImage& frame) {
  if (frame.empty()) throw Error("rklt: empty frame");

  // Layer 1: track the projected reference grid from the previous frame.
  std::vector<Point2> prev_pts;
  prev_pts.reserve(ref_grid_.size());
  for (const Point2& g : ref_grid_) prev_pts.push_back(apply(warp_, g));
  const std::vector<TrackedPoint> tracked =
      klt_track(prev_, frame, prev_pts, cfg_.klt);

  std::vector<Point2> src, dst;
  std::vector<size_t> grid_idx;
  for (size_t i = 0; i < tracked.size(); ++i) {
    if (tracked[i].status == PointStatus::Tracked) {
      src.push_back(ref_grid_[i]);
      dst.push_back(tracked[i].p);
      grid_idx.push_back(i);
    }
  }

  RkltResult res;
  res.diag.tracked_points = int(src.size());
  const std::optional<RansacResult> fit =
      ransac_similarity(src, dst, cfg_.ransac, rng_);
  prev_ = frame;
  if (!fit) {
    res.lost = true;
    res.quad = quad();
    return res;
  }
  res.diag.inliers = fit->inlier_count;

  // Layer 2: refine against the frame-0 template over the inlier support.
  std::vector<uint8_t> support(size_t(tmpl_w_) * tmpl_h_, 0);
  for (size_t k = 0; k < grid_idx.size(); ++k) {
    if (!fit->inliers[k]) continue;
    const Point2 g = ref_grid_[grid_idx[k]];
    // Pixel centers within thresh of the grid point, both axes.
    const int x0 = std::max(
        0, int(std::ceil(g.x - cfg_.ransac.thresh + tmpl_w_ / 2.0 - 0.5)));
    const int x1 = std::min(
        tmpl_w_ - 1,
        int(std::floor(g.x + cfg_.ransac.thresh + tmpl_w_ / 2.0 - 0.5)));
    const int y0 = std::max(
        0, int(std::ceil(g.y - cfg_.ransac.thresh + tmpl_h_ / 2.0 - 0.5)));
    const int y1 = std::min(
        tmpl_h_ - 1,
        int(std::floor(g.y + cfg_.ransac.thresh + tmpl_h_ / 2.0 - 0.5)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        support[size_t(y) * tmpl_w_ + x] = 1;
      }
    }
  }

  const WarpMatrix init = project_similarity(fit->params, dof_);
  const IcResult refined =
      ic_refine(tmpl_.with_support_mask(std::move(support)), frame, init,
                cfg_.ic);
  warp_ = refined.warp;
  res.diag.ncc = refined.ncc;
  res.diag.ic_iters = refined.iters;
  res.lost = refined.ncc < cfg_.min_ncc;
  res.quad = quad();
  return res;
}

CornerQuad RkltTracker::quad() const {
  return apply_warp(warp_, make_rect(-tmpl_w_ / 2.0, -tmpl_h_ / 2.0,
                                     double(tmpl_w_), double(tmpl_h_)));
}

}  // namespace ptrack
