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

#include "ptrack/features.hpp"

#include <algorithm>
#include <cmath>

#include "ptrack/error.hpp"

namespace ptrack {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kBlockEps = 1e-10;   // inside the block L2 norm
constexpr double kRenormEps = 1e-12;  // after clipping
constexpr double kClip = 0.2;
}  // namespace

FeatureMap hog(const GrayImage& patch, int cell) {
  if (patch.empty()) throw Error("hog: empty patch");
  if (cell < 1) throw Error("hog: cell size must be positive");
  const int cx = patch.width / cell;
  const int cy = patch.height / cell;
  if (cx < 2 || cy < 2) throw Error("hog: patch smaller than two cells");

  // Orientation histograms, one kHogBins vector per cell. Trailing pixels
  // that do not fill a whole cell are ignored.
  std::vector<double> hist(size_t(cx) * cy * kHogBins, 0.0);
  auto hbin = [&](int ix, int iy, int o) -> double& {
    return hist[(size_t(iy) * cx + ix) * kHogBins + o];
  };

  const int px = cx * cell;
  const int py = cy * cell;
  const double bin_width = 180.0 / kHogBins;
  for (int y = 0; y < py; ++y) {
    for (int x = 0; x < px; ++x) {
      const double gx =
          0.5 * (patch.at_clamped(x + 1, y) - patch.at_clamped(x - 1, y));
      const double gy =
          0.5 * (patch.at_clamped(x, y + 1) - patch.at_clamped(x, y - 1));
      const double mag = std::hypot(gx, gy);
      if (mag == 0.0) continue;

      double theta = std::atan2(gy, gx) * 180.0 / kPi;  // (-180, 180]
      if (theta < 0.0) theta += 180.0;                  // unsigned
      if (theta >= 180.0) theta -= 180.0;
      const double ob = theta / bin_width;
      const int o0 = int(ob) % kHogBins;
      const int o1 = (o0 + 1) % kHogBins;
      const double ow = ob - std::floor(ob);

      // Bilinear spatial vote; contributions outside the grid are dropped.
      const double cxf = (x + 0.5) / cell - 0.5;
      const double cyf = (y + 0.5) / cell - 0.5;
      const int ix0 = int(std::floor(cxf));
      const int iy0 = int(std::floor(cyf));
      const double wx1 = cxf - ix0;
      const double wy1 = cyf - iy0;
      const double wcell[2][2] = {{(1 - wx1) * (1 - wy1), wx1 * (1 - wy1)},
                                  {(1 - wx1) * wy1, wx1 * wy1}};
      for (int dy = 0; dy < 2; ++dy) {
        const int iy = iy0 + dy;
        if (iy < 0 || iy >= cy) continue;
        for (int dx = 0; dx < 2; ++dx) {
          const int ix = ix0 + dx;
          if (ix < 0 || ix >= cx) continue;
          const double wsp = wcell[dy][dx] * mag;
          hbin(ix, iy, o0) += wsp * (1.0 - ow);
          hbin(ix, iy, o1) += wsp * ow;
        }
      }
    }
  }

  // Block normalization: every 2x2 block of cells is L2-normalized, clipped
  // at kClip and renormalized; a cell's final histogram is the average of
  // its copies across all blocks it belongs to.
  FeatureMap out(cx, cy, kHogChannels);
  std::vector<double> acc(size_t(cx) * cy * kHogBins, 0.0);
  std::vector<int> blocks(size_t(cx) * cy, 0);
  std::vector<double> block(4 * kHogBins);
  for (int by = 0; by + 1 < cy; ++by) {
    for (int bx = 0; bx + 1 < cx; ++bx) {
      double energy = 0.0;
      int bi = 0;
      for (int dy = 0; dy < 2; ++dy) {
        for (int dx = 0; dx < 2; ++dx) {
          for (int o = 0; o < kHogBins; ++o, ++bi) {
            const double h = hbin(bx + dx, by + dy, o);
            block[bi] = h;
            energy += h * h;
          }
        }
      }
      const double n1 = std::sqrt(energy + kBlockEps);
      double clipped_energy = 0.0;
      for (double& b : block) {
        b = std::min(b / n1, kClip);
        clipped_energy += b * b;
      }
      const double n2 = std::sqrt(clipped_energy) + kRenormEps;
      bi = 0;
      for (int dy = 0; dy < 2; ++dy) {
        for (int dx = 0; dx < 2; ++dx) {
          const size_t c = size_t(by + dy) * cx + (bx + dx);
          for (int o = 0; o < kHogBins; ++o, ++bi) {
            acc[c * kHogBins + o] += block[bi] / n2;
          }
          blocks[c] += 1;
        }
      }
    }
  }
  for (int iy = 0; iy < cy; ++iy) {
    for (int ix = 0; ix < cx; ++ix) {
      const size_t c = size_t(iy) * cx + ix;
      const double inv = blocks[c] > 0 ? 1.0 / blocks[c] : 0.0;
      for (int o = 0; o < kHogBins; ++o) {
        out.at(o, ix, iy) = acc[c * kHogBins + o] * inv;
      }
    }
  }

  // Intensity channel: plain cell means of the raw patch.
  for (int iy = 0; iy < cy; ++iy) {
    for (int ix = 0; ix < cx; ++ix) {
      double sum = 0.0;
      for (int y = iy * cell; y < (iy + 1) * cell; ++y) {
        for (int x = ix * cell; x < (ix + 1) * cell; ++x) {
          sum += patch.at(x, y);
        }
      }
      out.at(kHogBins, ix, iy) = sum / (cell * cell);
    }
  }
  return out;
}

namespace {
std::vector<double> hann(int n) {
  std::vector<double> w(n, 1.0);
  if (n > 1) {
    for (int i = 0; i < n; ++i) {
      w[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * i / (n - 1)));
    }
  }
  return w;
}
}  // namespace

Grid cosine_window(int w, int h) {
  if (w < 1 || h < 1) throw Error("cosine_window: empty shape");
  const auto wx = hann(w);
  const auto wy = hann(h);
  Grid g(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) g.at(x, y) = wx[x] * wy[y];
  }
  return g;
}

Grid gaussian_label(int w, int h, double sigma_x, double sigma_y) {
  if (w < 1 || h < 1) throw Error("gaussian_label: empty shape");
  if (!(sigma_x > 0.0) || !(sigma_y > 0.0)) {
    throw Error("gaussian_label: sigma must be positive");
  }
  auto axis = [](int n, double sigma) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
      const double d = (i <= n / 2) ? double(i) : double(i - n);
      g[i] = std::exp(-0.5 * d * d / (sigma * sigma));
    }
    return g;
  };
  const auto gx = axis(w, sigma_x);
  const auto gy = axis(h, sigma_y);
  Grid g(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) g.at(x, y) = gx[x] * gy[y];
  }
  return g;
}

void apply_window(FeatureMap& f, const Grid& win) {
  if (f.w != win.w || f.h != win.h) throw Error("apply_window: shape mismatch");
  for (int l = 0; l < f.d; ++l) {
    double* ch = f.channel(l);
    for (size_t i = 0; i < size_t(f.w) * f.h; ++i) ch[i] *= win.v[i];
  }
}

}  // namespace ptrack
