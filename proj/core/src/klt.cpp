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

#include "ptrack/klt.hpp"

#include <cmath>
#include <vector>

#include "ptrack/error.hpp"

namespace ptrack {

namespace {

struct WindowModel {
  std::vector<double> value;  // template intensities
  std::vector<double> gx, gy;
  double gxx = 0, gxy = 0, gyy = 0;  // normal matrix
};

// Samples the fixed window around `c` in the previous image along with its
// gradients, and accumulates the 2x2 normal matrix.
WindowModel sample_window(const GrayImage& img, Point2 c, int radius) {
  const int side = 2 * radius + 1;
  WindowModel w;
  w.value.resize(size_t(side) * side);
  w.gx.resize(w.value.size());
  w.gy.resize(w.value.size());
  size_t i = 0;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx, ++i) {
      const double x = c.x + dx, y = c.y + dy;
      w.value[i] = img.sample(x, y);
      const double gx = 0.5 * (img.sample(x + 1, y) - img.sample(x - 1, y));
      const double gy = 0.5 * (img.sample(x, y + 1) - img.sample(x, y - 1));
      w.gx[i] = gx;
      w.gy[i] = gy;
      w.gxx += gx * gx;
      w.gxy += gx * gy;
      w.gyy += gy * gy;
    }
  }
  return w;
}

}  // namespace

std::vector<TrackedPoint> klt_track(const GrayImage& prev,
                                    const GrayImage& next,
                                    std::span<const Point2> pts,
                                    const KltConfig& cfg) {
  if (prev.empty() || next.empty()) throw Error("klt_track: empty image");
  if (prev.width != next.width || prev.height != next.height) {
    throw Error("klt_track: image size mismatch");
  }
  if (cfg.window < 3 || cfg.window % 2 == 0) {
    throw Error("klt_track: window must be odd and >= 3");
  }
  if (cfg.levels < 1) throw Error("klt_track: need at least one level");

  const auto pyr_prev = pyramid(prev, cfg.levels);
  const auto pyr_next = pyramid(next, cfg.levels);
  const int levels = int(pyr_prev.size());
  const int radius = cfg.window / 2;

  std::vector<TrackedPoint> out(pts.size());
  for (size_t pi = 0; pi < pts.size(); ++pi) {
    TrackedPoint& tp = out[pi];
    const Point2 base = pts[pi];
    if (base.x < 0 || base.y < 0 || base.x > prev.width ||
        base.y > prev.height) {
      tp.p = base;
      tp.status = PointStatus::Lost;
      continue;
    }

    // Displacement carried across levels (in the coordinates of the level
    // being processed).
    Point2 d{0, 0};
    bool lost = false;
    for (int l = levels - 1; l >= 0; --l) {
      const GrayImage& ip = pyr_prev[l];
      const GrayImage& in = pyr_next[l];
      const double s = 1.0 / double(1 << l);
      const Point2 c{base.x * s, base.y * s};

      const WindowModel w = sample_window(ip, c, radius);
      const double npix = double(w.value.size());
      const double tr = w.gxx + w.gyy;
      const double det = w.gxx * w.gyy - w.gxy * w.gxy;
      const double min_eig =
          0.5 * (tr - std::sqrt(std::max(0.0, tr * tr - 4.0 * det)));
      if (min_eig / npix < cfg.min_eig) {
        lost = true;
        break;
      }

      for (int it = 0; it < cfg.max_iters; ++it) {
        double bx = 0, by = 0;
        size_t i = 0;
        for (int dy = -radius; dy <= radius; ++dy) {
          for (int dx = -radius; dx <= radius; ++dx, ++i) {
            const double diff =
                in.sample(c.x + d.x + dx, c.y + d.y + dy) - w.value[i];
            bx += diff * w.gx[i];
            by += diff * w.gy[i];
          }
        }
        const double ux = -(w.gyy * bx - w.gxy * by) / det;
        const double uy = -(-w.gxy * bx + w.gxx * by) / det;
        d.x += ux;
        d.y += uy;
        if (!std::isfinite(d.x) || !std::isfinite(d.y) ||
            norm(d) > 1.5 * cfg.window) {
          lost = true;  // diverged beyond the per-level capture range
          break;
        }
        if (std::hypot(ux, uy) < cfg.epsilon) break;
      }
      if (lost) break;
      if (l > 0) d = 2.0 * d;  // carry to the finer level
    }

    const Point2 final_p = base + d;
    if (lost || final_p.x < 0 || final_p.y < 0 || final_p.x > next.width ||
        final_p.y > next.height) {
      tp.p = base;
      tp.status = PointStatus::Lost;
      continue;
    }

    // Final residual at full resolution.
    double ssd = 0.0;
    for (int dy = -radius; dy <= radius; ++dy) {
      for (int dx = -radius; dx <= radius; ++dx) {
        const double diff = next.sample(final_p.x + dx, final_p.y + dy) -
                            prev.sample(base.x + dx, base.y + dy);
        ssd += diff * diff;
      }
    }
    tp.p = final_p;
    tp.status = PointStatus::Tracked;
    tp.residual = ssd;
  }
  return out;
}

}  // namespace ptrack
