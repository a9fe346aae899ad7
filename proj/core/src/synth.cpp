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

#include "ptrack/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "ptrack/error.hpp"
#include "ptrack/imageio.hpp"

namespace ptrack {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

// splitmix64-style mixing so per-frame streams are independent of each
// other and of the base seed's low bits.
uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Portable unit normal via Box-Muller on mt19937_64 draws; avoids relying
// on std::normal_distribution's unspecified algorithm for reproducibility.
class NormalGen {
 public:
  explicit NormalGen(uint64_t seed) : rng_(seed) {}
  double operator()() {
    // (0, 1] to keep the log finite.
    const double u1 =
        (double(rng_() >> 11) + 1.0) / 9007199254740993.0;  // 2^53 + 1
    const double u2 = double(rng_() >> 11) / 9007199254740992.0;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }
  double uniform() {  // [0, 1)
    return double(rng_() >> 11) / 9007199254740992.0;
  }

 private:
  std::mt19937_64 rng_;
};

void box_blur(GrayImage& img, int radius) {
  if (radius < 1) return;
  const int n = 2 * radius + 1;
  GrayImage tmp(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double s = 0.0;
      for (int k = -radius; k <= radius; ++k) s += img.at_clamped(x + k, y);
      tmp.at(x, y) = s / n;
    }
  }
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double s = 0.0;
      for (int k = -radius; k <= radius; ++k) s += tmp.at_clamped(x, y + k);
      img.at(x, y) = s / n;
    }
  }
}

void check_spec(const SynthSpec& spec) {
  if (spec.texture.empty()) throw Error("synth: empty texture");
  if (spec.background.empty()) throw Error("synth: empty background");
  if (spec.trajectory.empty()) throw Error("synth: empty trajectory");
  if (!spec.illum.empty() && spec.illum.size() != spec.trajectory.size()) {
    throw Error("synth: illumination list length mismatch");
  }
  if (spec.noise_sigma < 0.0) throw Error("synth: negative noise sigma");
  if (spec.blur_radius < 0) throw Error("synth: negative blur radius");
}

GrayImage render_frame(const SynthSpec& spec, int i) {
  const SimilarityParams& pose = spec.trajectory[i];
  const double tw = spec.texture.width;
  const double th = spec.texture.height;

  const WarpMatrix fwd = params_to_matrix(pose);
  const CornerQuad quad = apply_warp(fwd, make_rect(-tw / 2, -th / 2, tw, th));

  GrayImage out = spec.background;

  // Target bounding box in the frame; empty intersection means the pose
  // puts the target wholly outside the visible area.
  double bx0 = quad.pts[0].x, bx1 = quad.pts[0].x;
  double by0 = quad.pts[0].y, by1 = quad.pts[0].y;
  for (const Point2& p : quad.pts) {
    bx0 = std::min(bx0, p.x);
    bx1 = std::max(bx1, p.x);
    by0 = std::min(by0, p.y);
    by1 = std::max(by1, p.y);
  }
  if (bx1 <= 0 || by1 <= 0 || bx0 >= out.width || by0 >= out.height) {
    throw Error("synth: target rendered fully outside the frame");
  }

  const WarpMatrix inv = invert(fwd);
  const int x0 = std::max(0, int(std::floor(bx0)));
  const int x1 = std::min(out.width - 1, int(std::ceil(bx1)));
  const int y0 = std::max(0, int(std::floor(by0)));
  const int y1 = std::min(out.height - 1, int(std::ceil(by1)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const Point2 t = apply(inv, {x + 0.5, y + 0.5});
      if (t.x >= -tw / 2 && t.x < tw / 2 && t.y >= -th / 2 && t.y < th / 2) {
        out.at(x, y) = spec.texture.sample(t.x + tw / 2, t.y + th / 2);
      }
    }
  }

  if (!spec.illum.empty()) {
    const auto [gain, bias] = spec.illum[i];
    for (double& v : out.data) v = std::clamp(gain * v + bias, 0.0, 1.0);
  }

  box_blur(out, spec.blur_radius);

  if (spec.noise_sigma > 0.0) {
    NormalGen gen(mix_seed(spec.seed, uint64_t(i)));
    for (double& v : out.data) {
      v = std::clamp(v + spec.noise_sigma * gen(), 0.0, 1.0);
    }
  }

  for (const Occluder& occ : spec.occluders) {
    if (i < occ.first_frame || i > occ.last_frame) continue;
    const int ox0 = std::max(0, int(std::floor(occ.x)));
    const int oy0 = std::max(0, int(std::floor(occ.y)));
    const int ox1 = std::min(out.width, int(std::ceil(occ.x + occ.w)));
    const int oy1 = std::min(out.height, int(std::ceil(occ.y + occ.h)));
    for (int y = oy0; y < oy1; ++y) {
      for (int x = ox0; x < ox1; ++x) out.at(x, y) = occ.intensity;
    }
  }

  return out;
}

}  // namespace

CornerQuad synth_gt_quad(const SynthSpec& spec, int frame) {
  check_spec(spec);
  if (frame < 0 || size_t(frame) >= spec.trajectory.size()) {
    throw Error("synth_gt_quad: frame out of range");
  }
  const double tw = spec.texture.width;
  const double th = spec.texture.height;
  return apply_warp(params_to_matrix(spec.trajectory[frame]),
                    make_rect(-tw / 2, -th / 2, tw, th));
}

SynthSequence render(const SynthSpec& spec) {
  check_spec(spec);
  SynthSequence seq;
  seq.frames.reserve(spec.trajectory.size());
  seq.gt.reserve(spec.trajectory.size());
  for (size_t i = 0; i < spec.trajectory.size(); ++i) {
    seq.frames.push_back(render_frame(spec, int(i)));
    seq.gt.push_back(synth_gt_quad(spec, int(i)));
  }
  return seq;
}

std::vector<SimilarityParams> random_trajectory(int n, uint64_t seed,
                                                const SimilarityParams& start,
                                                const TrajectoryCaps& caps) {
  if (n < 1) throw Error("random_trajectory: need at least one frame");
  NormalGen gen(mix_seed(seed, 0xf00d));
  std::vector<SimilarityParams> traj;
  traj.reserve(n);
  traj.push_back(start);
  for (int i = 1; i < n; ++i) {
    SimilarityParams p = traj.back();
    p.tx += (2.0 * gen.uniform() - 1.0) * caps.max_step_px;
    p.ty += (2.0 * gen.uniform() - 1.0) * caps.max_step_px;
    const double ds = (2.0 * gen.uniform() - 1.0) * caps.max_scale_step;
    p.scale = std::clamp(p.scale * (1.0 + ds), 0.5, 2.0);
    p.rotation_deg += (2.0 * gen.uniform() - 1.0) * caps.max_rot_step_deg;
    traj.push_back(p);
  }
  return traj;
}

GrayImage checkerboard(int w, int h, int square, double lo, double hi) {
  if (w < 1 || h < 1 || square < 1) throw Error("checkerboard: bad shape");
  GrayImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.at(x, y) = (((x / square) + (y / square)) % 2 == 0) ? lo : hi;
    }
  }
  return img;
}

GrayImage noise_texture(int w, int h, uint64_t seed, int smooth_radius,
                        double lo, double hi) {
  if (w < 1 || h < 1) throw Error("noise_texture: bad shape");
  if (!(hi > lo)) throw Error("noise_texture: empty intensity range");
  GrayImage img(w, h);
  NormalGen gen(mix_seed(seed, 0x7e27));
  for (double& v : img.data) v = gen.uniform();
  box_blur(img, smooth_radius);
  const auto [mn_it, mx_it] =
      std::minmax_element(img.data.begin(), img.data.end());
  const double mn = *mn_it;  // copied: the loop below overwrites the buffer
  const double span = (*mx_it > mn) ? (*mx_it - mn) : 1.0;
  for (double& v : img.data) v = lo + (hi - lo) * (v - mn) / span;
  return img;
}

void export_sequence(const SynthSequence& seq, const std::string& dir) {
  if (seq.frames.size() != seq.gt.size()) {
    throw Error("export_sequence: frame/gt length mismatch");
  }
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  std::ofstream gt(fs::path(dir) / "gt.txt");
  if (!gt) throw Error("export_sequence: cannot write gt.txt");
  gt.precision(17);
  for (size_t i = 0; i < seq.frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame%05zu.png", i);
    save_gray(seq.frames[i], (fs::path(dir) / name).string());
    const CornerQuad& q = seq.gt[i];
    gt << q.pts[0].x << ' ' << q.pts[0].y << ' ' << q.pts[1].x << ' '
       << q.pts[1].y << ' ' << q.pts[2].x << ' ' << q.pts[2].y << ' '
       << q.pts[3].x << ' ' << q.pts[3].y << '\n';
  }
}

}  // namespace ptrack
