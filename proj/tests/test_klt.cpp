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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "ptrack/klt.hpp"
#include "testutil.hpp"

using namespace ptrack;

namespace {

// Shifts an image by a subpixel offset via bilinear resampling.
GrayImage shifted(const GrayImage& img, double dx, double dy) {
  GrayImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      out.at(x, y) = img.sample(x + 0.5 - dx, y + 0.5 - dy);
    }
  }
  return out;
}

std::vector<Point2> interior_points(int w, int h, int margin, int step) {
  std::vector<Point2> pts;
  for (int y = margin; y < h - margin; y += step) {
    for (int x = margin; x < w - margin; x += step) {
      pts.push_back({x + 0.5, y + 0.5});
    }
  }
  return pts;
}

// Smooth closed-form intensity pattern: rendering a shifted copy of it is
// exact, unlike resampling a stored raster, so subpixel accuracy checks
// measure only the tracker's own interpolation error.
double pattern(double x, double y) {
  return 0.5 + 0.2 * std::sin(0.37 * x + 0.9) * std::cos(0.29 * y - 0.4) +
         0.15 * std::sin(0.19 * x - 1.1) * std::sin(0.23 * y + 0.5) +
         0.08 * std::cos(0.11 * (x + 0.6 * y));
}

GrayImage pattern_image(int w, int h, double dx, double dy) {
  GrayImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.at(x, y) = pattern(x + 0.5 - dx, y + 0.5 - dy);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("identity motion is recovered exactly") {
  const GrayImage img = tt::textured(64, 64, 21);
  const auto pts = interior_points(64, 64, 12, 8);
  const auto tracked = klt_track(img, img, pts);
  REQUIRE(tracked.size() == pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    REQUIRE(tracked[i].status == PointStatus::Tracked);
    CHECK(norm(tracked[i].p - pts[i]) < 1e-6);
    CHECK(tracked[i].residual < 1e-12);
  }
}

TEST_CASE("subpixel translation is recovered to centipixel accuracy") {
  const double dx = 1.37, dy = -0.64;
  const GrayImage img = pattern_image(72, 60, 0.0, 0.0);
  const GrayImage next = pattern_image(72, 60, dx, dy);
  const auto pts = interior_points(72, 60, 14, 9);
  const auto tracked = klt_track(img, next, pts);
  int ok = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (tracked[i].status != PointStatus::Tracked) continue;
    ++ok;
    CHECK(std::abs(tracked[i].p.x - (pts[i].x + dx)) < 0.05);
    CHECK(std::abs(tracked[i].p.y - (pts[i].y + dy)) < 0.05);
  }
  CHECK(ok >= int(pts.size()) - 2);
}

TEST_CASE("pyramid handles displacements beyond the window") {
  const GrayImage img = tt::textured(128, 128, 23, /*smooth=*/4);
  const double dx = 9.0, dy = -7.0;  // window is 11: needs coarse levels
  const GrayImage next = shifted(img, dx, dy);
  const auto pts = interior_points(128, 128, 28, 16);
  KltConfig cfg;
  cfg.levels = 3;
  const auto tracked = klt_track(img, next, pts, cfg);
  int ok = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (tracked[i].status != PointStatus::Tracked) continue;
    if (std::abs(tracked[i].p.x - (pts[i].x + dx)) < 0.25 &&
        std::abs(tracked[i].p.y - (pts[i].y + dy)) < 0.25) {
      ++ok;
    }
  }
  CHECK(ok >= int(pts.size() * 3) / 4);

  // single level cannot bridge the same displacement
  KltConfig flat = cfg;
  flat.levels = 1;
  const auto single = klt_track(img, next, pts, flat);
  int single_ok = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (single[i].status == PointStatus::Tracked &&
        std::abs(single[i].p.x - (pts[i].x + dx)) < 0.25 &&
        std::abs(single[i].p.y - (pts[i].y + dy)) < 0.25) {
      ++single_ok;
    }
  }
  CHECK(single_ok < ok);
}

TEST_CASE("textureless windows are reported lost") {
  GrayImage flat(64, 64, 0.5);
  const std::vector<Point2> pts{{32.0, 32.0}, {16.0, 48.0}};
  const auto tracked = klt_track(flat, flat, pts);
  for (const auto& t : tracked) CHECK(t.status == PointStatus::Lost);
}

TEST_CASE("points leaving the image are reported lost") {
  const GrayImage img = tt::textured(48, 48, 24);
  const std::vector<Point2> pts{{-10.0, 20.0}, {20.0, 200.0}};
  const auto tracked = klt_track(img, img, pts);
  for (const auto& t : tracked) CHECK(t.status == PointStatus::Lost);
}

TEST_CASE("residual reflects appearance mismatch") {
  const GrayImage img = tt::textured(64, 64, 25, /*smooth=*/3);
  GrayImage noisy = img;
  tt::Rng rng(26);
  for (double& v : noisy.data) {
    v = std::min(1.0, std::max(0.0, v + rng.uniform(-0.1, 0.1)));
  }
  const auto pts = interior_points(64, 64, 16, 12);
  const auto clean = klt_track(img, img, pts);
  const auto perturbed = klt_track(img, noisy, pts);
  for (size_t i = 0; i < pts.size(); ++i) {
    if (clean[i].status != PointStatus::Tracked) continue;
    if (perturbed[i].status != PointStatus::Tracked) continue;
    CHECK(perturbed[i].residual > clean[i].residual);
  }
}
