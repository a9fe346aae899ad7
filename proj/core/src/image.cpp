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

#include "ptrack/image.hpp"

#include <algorithm>
#include <cmath>

#include "ptrack/error.hpp"

namespace ptrack {

double GrayImage::at_clamped(int x, int y) const {
  x = std::clamp(x, 0, width - 1);
  y = std::clamp(y, 0, height - 1);
  return data[size_t(y) * width + x];
}

double GrayImage::sample(double x, double y) const {
  // Shift to the grid of pixel centers, then interpolate the 4 neighbours.
  const double fx = x - 0.5;
  const double fy = y - 0.5;
  const int x0 = int(std::floor(fx));
  const int y0 = int(std::floor(fy));
  const double ax = fx - x0;
  const double ay = fy - y0;
  const double v00 = at_clamped(x0, y0);
  const double v10 = at_clamped(x0 + 1, y0);
  const double v01 = at_clamped(x0, y0 + 1);
  const double v11 = at_clamped(x0 + 1, y0 + 1);
  const double top = v00 + ax * (v10 - v00);
  const double bot = v01 + ax * (v11 - v01);
  return top + ay * (bot - top);
}

GrayImage extract_patch(const GrayImage& img, Point2 center, double base_w,
                        double base_h, double scale, double rotation_deg,
                        int out_w, int out_h) {
  if (img.empty()) throw Error("extract_patch: empty image");
  if (out_w < 4 || out_h < 4) throw Error("extract_patch: output too small");
  if (!(base_w > 0.0) || !(base_h > 0.0) || !(scale > 0.0)) {
    throw Error("extract_patch: non-positive region size");
  }

  const double rad = rotation_deg * 3.14159265358979323846 / 180.0;
  const double c = std::cos(rad), s = std::sin(rad);
  const double sx = base_w * scale / out_w;
  const double sy = base_h * scale / out_h;

  GrayImage out(out_w, out_h);
  for (int v = 0; v < out_h; ++v) {
    const double ry = (v + 0.5) - out_h / 2.0;
    for (int u = 0; u < out_w; ++u) {
      const double rx = (u + 0.5) - out_w / 2.0;
      const double dx = rx * sx, dy = ry * sy;
      out.at(u, v) =
          img.sample(center.x + c * dx - s * dy, center.y + s * dx + c * dy);
    }
  }
  return out;
}

std::pair<GrayImage, GrayImage> gradient(const GrayImage& img) {
  if (img.empty()) throw Error("gradient: empty image");
  GrayImage gx(img.width, img.height), gy(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      gx.at(x, y) = 0.5 * (img.at_clamped(x + 1, y) - img.at_clamped(x - 1, y));
      gy.at(x, y) = 0.5 * (img.at_clamped(x, y + 1) - img.at_clamped(x, y - 1));
    }
  }
  return {std::move(gx), std::move(gy)};
}

std::vector<GrayImage> pyramid(const GrayImage& img, int levels) {
  if (img.empty()) throw Error("pyramid: empty image");
  if (levels < 1) throw Error("pyramid: need at least one level");

  std::vector<GrayImage> pyr;
  pyr.push_back(img);
  for (int l = 1; l < levels; ++l) {
    const GrayImage& prev = pyr.back();
    const int w = prev.width / 2;
    const int h = prev.height / 2;
    if (w < 4 || h < 4) break;
    GrayImage next(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        next.at(x, y) = 0.25 * (prev.at(2 * x, 2 * y) +
                                prev.at_clamped(2 * x + 1, 2 * y) +
                                prev.at_clamped(2 * x, 2 * y + 1) +
                                prev.at_clamped(2 * x + 1, 2 * y + 1));
      }
    }
    pyr.push_back(std::move(next));
  }
  return pyr;
}

}  // namespace ptrack
