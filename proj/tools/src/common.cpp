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

#include "common.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "ptrack/error.hpp"
#include "ptrack/imageio.hpp"

namespace ptrack::tool {

DofModel dof_from_int(int dof) {
  switch (dof) {
    case 2: return DofModel::Translation2;
    case 3: return DofModel::TransScale3;
    case 4: return DofModel::Similarity4;
    case 6: return DofModel::Affine6;
    case 8: return DofModel::Homography8;
  }
  throw Error("unsupported dof: " + std::to_string(dof));
}

RsstConfig rsst_config_from(const Config& c) {
  RsstConfig r;
  r.padding = c.get_double("rsst.padding", r.padding);
  r.lambda = c.get_double("rsst.lambda", r.lambda);
  r.eta = c.get_double("rsst.eta", r.eta);
  r.template_max_side = c.get_int("rsst.template_max_side", r.template_max_side);
  r.cell = c.get_int("rsst.cell", r.cell);
  r.n_scales = c.get_int("rsst.n_scales", r.n_scales);
  r.scale_step = c.get_double("rsst.scale_step", r.scale_step);
  r.rot_range = c.get_double("rsst.rot_range", r.rot_range);
  r.rot_step = c.get_double("rsst.rot_step", r.rot_step);
  r.sample_max_side = c.get_int("rsst.sample_max_side", r.sample_max_side);
  return r;
}

RkltConfig rklt_config_from(const Config& c, uint64_t seed) {
  RkltConfig r;
  r.grid = c.get_int("rklt.grid", r.grid);
  r.ransac.thresh = c.get_double("rklt.ransac_thresh", r.ransac.thresh);
  r.ransac.confidence = c.get_double("rklt.ransac_conf", r.ransac.confidence);
  r.ransac.max_iters = c.get_int("rklt.ransac_max_iters", r.ransac.max_iters);
  r.ransac.min_inliers = c.get_int("rklt.min_inliers", r.ransac.min_inliers);
  r.min_ncc = c.get_double("rklt.min_ncc", r.min_ncc);
  r.klt.levels = c.get_int("rklt.klt_levels", r.klt.levels);
  r.klt.window = c.get_int("rklt.klt_window", r.klt.window);
  r.klt.max_iters = c.get_int("rklt.klt_max_iters", r.klt.max_iters);
  r.klt.epsilon = c.get_double("rklt.klt_epsilon", r.klt.epsilon);
  r.klt.min_eig = c.get_double("rklt.klt_min_eig", r.klt.min_eig);
  r.ic.max_iters = c.get_int("rklt.ic_max_iters", r.ic.max_iters);
  r.ic.epsilon = c.get_double("rklt.ic_epsilon", r.ic.epsilon);
  r.ic.max_halvings = c.get_int("rklt.ic_max_halvings", r.ic.max_halvings);
  r.seed = seed;
  return r;
}

namespace {

std::string overlay_path(const std::string& dir, int frame) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame%05d.png", frame);
  return (std::filesystem::path(dir) / buf).string();
}

}  // namespace

RunRecord run_tracker_on(const Dataset& ds, const std::string& tracker,
                         int dof, int init_frame, uint64_t seed,
                         const Config& cfg, const std::string& overlay_dir) {
  if (ds.size() == 0) throw Error("dataset is empty");
  if (init_frame < 0 || size_t(init_frame) >= ds.size()) {
    throw Error("init frame " + std::to_string(init_frame) +
                " outside dataset of " + std::to_string(ds.size()) +
                " frames");
  }
  if (!overlay_dir.empty()) {
    std::filesystem::create_directories(overlay_dir);
  }

  RunRecord rec;
  rec.tracker = tracker;
  rec.dof = dof;
  rec.dataset = ds.name;
  rec.init_frame = init_frame;
  rec.seed = seed;
  rec.config_hash = cfg.hash();

  const GrayImage first = ds.frame(size_t(init_frame));
  const CornerQuad init_quad = ds.gt[size_t(init_frame)];
  rec.rows.push_back({init_frame, false, init_quad, 0.0});
  if (!overlay_dir.empty()) {
    save_overlay(first, init_quad, overlay_path(overlay_dir, init_frame));
  }

  auto track_rest = [&](auto&& step) {
    for (size_t i = size_t(init_frame) + 1; i < ds.size(); ++i) {
      const GrayImage frame = ds.frame(i);
      const auto t0 = std::chrono::steady_clock::now();
      RunRow row = step(frame);
      const auto t1 = std::chrono::steady_clock::now();
      row.frame = int(i);
      row.time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      rec.rows.push_back(row);
      if (!overlay_dir.empty()) {
        save_overlay(frame, row.quad, overlay_path(overlay_dir, int(i)));
      }
    }
  };

  if (tracker == "rsst") {
    if (dof != 4) throw Error("rsst supports only --dof 4");
    RsstTracker t(first, init_quad, rsst_config_from(cfg));
    track_rest([&](const GrayImage& frame) {
      RunRow row;
      row.quad = t.track(frame);
      return row;
    });
  } else if (tracker == "rklt") {
    RkltTracker t(first, init_quad, dof_from_int(dof),
                  rklt_config_from(cfg, seed));
    track_rest([&](const GrayImage& frame) {
      const RkltResult res = t.track(frame);
      RunRow row;
      row.lost = res.lost;
      row.quad = res.quad;
      return row;
    });
  } else {
    throw Error("unknown tracker: " + tracker);
  }
  return rec;
}

std::vector<std::string> preset_names() {
  return {"identity", "translation", "rotation",  "scale",
          "combined", "random",      "occlusion", "noisy"};
}

SynthSequence make_preset(const std::string& name, int frames, uint64_t seed,
                          int width, int height, int target) {
  if (frames < 1) throw Error("preset needs at least one frame");
  if (target < 16) throw Error("preset target must be at least 16 px");

  constexpr double kPi = 3.14159265358979323846;
  SynthSpec spec;
  spec.seed = seed;
  spec.texture = noise_texture(target, target, seed ^ 0x7478ull, 2, 0.05, 0.95);
  spec.background =
      noise_texture(width, height, seed ^ 0x6267ull, 3, 0.25, 0.55);

  const double cx = width / 2.0, cy = height / 2.0;
  const int n = frames;

  if (name == "random" || name == "noisy") {
    spec.trajectory =
        random_trajectory(n, seed, {cx, cy, 1.0, 0.0}, TrajectoryCaps{});
  } else {
    spec.trajectory.reserve(size_t(n));
    for (int i = 0; i < n; ++i) {
      SimilarityParams p{cx, cy, 1.0, 0.0};
      if (name == "identity") {
        // static
      } else if (name == "translation") {
        p.tx = cx + 0.8 * i;
        p.ty = cy + 0.5 * i;
      } else if (name == "rotation") {
        p.rotation_deg = 1.0 * i;
      } else if (name == "scale") {
        p.scale = std::pow(1.5, n == 1 ? 0.0 : double(i) / double(n - 1));
      } else if (name == "combined" || name == "occlusion") {
        const double ph = n == 1 ? 0.0 : double(i) / double(n - 1);
        p.tx = cx + 20.0 * std::sin(2.0 * kPi * ph);
        p.ty = cy + 12.0 * std::sin(4.0 * kPi * ph);
        p.scale = 1.05 + 0.25 * std::sin(2.0 * kPi * ph);
        p.rotation_deg = 15.0 * std::sin(2.0 * kPi * ph + kPi / 3.0);
      } else {
        throw Error("unknown preset: " + name);
      }
      spec.trajectory.push_back(p);
    }
  }

  if (name == "occlusion") {
    // A static patch covering roughly 30% of the target area for ten
    // frames around the middle of the run.
    const double side = std::sqrt(0.3) * target;
    Occluder occ;
    occ.first_frame = n / 2;
    occ.last_frame = std::min(n - 1, n / 2 + 9);
    occ.x = cx - side / 2.0;
    occ.y = cy - side / 2.0;
    occ.w = side;
    occ.h = side;
    occ.intensity = 0.85;
    spec.occluders.push_back(occ);
  }
  if (name == "noisy") {
    spec.noise_sigma = 0.05;
    spec.blur_radius = 1;
  }
  return render(spec);
}

}  // namespace ptrack::tool
