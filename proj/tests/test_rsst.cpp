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

#include "ptrack/error.hpp"
#include "ptrack/eval.hpp"
#include "ptrack/rsst.hpp"
#include "ptrack/synth.hpp"
#include "testutil.hpp"

using namespace ptrack;

namespace {

SynthSpec target_scene(uint64_t seed) {
  SynthSpec spec;
  spec.texture = tt::textured(32, 32, seed);
  spec.background = noise_texture(128, 96, seed ^ 0xc1ull, 3, 0.25, 0.55);
  return spec;
}

}  // namespace

TEST_CASE("a static target stays locked") {
  SynthSpec spec = target_scene(91);
  spec.trajectory.assign(5, SimilarityParams{64.0, 48.0, 1.0, 0.0});
  const SynthSequence seq = render(spec);
  RsstTracker tracker(seq.frames[0], seq.gt[0]);
  CHECK(!tracker.low_confidence());
  for (size_t f = 1; f < seq.frames.size(); ++f) {
    const CornerQuad q = tracker.track(seq.frames[f]);
    CHECK(alignment_error(q, seq.gt[f]) < 0.5);
    CHECK(tracker.last_peak() > 0.5);
    CHECK(!tracker.low_confidence());
  }
  CHECK(tracker.pose().scale == doctest::Approx(1.0).epsilon(0.03));
  CHECK(std::abs(tracker.pose().rotation_deg) < 1e-9);
}

TEST_CASE("translation drift is followed to subpixel accuracy") {
  // 48 px target: the search window matches the 96 px template cap, so the
  // 4 px feature pitch is sampled at native resolution. Faster drift or a
  // resampled window pushes the sub-bin peak fit into visible lag.
  SynthSpec spec;
  spec.texture = noise_texture(48, 48, 92, 2, 0.05, 0.95);
  spec.background = noise_texture(256, 160, 92ull ^ 0xc1ull, 3, 0.25, 0.55);
  for (int i = 0; i < 20; ++i) {
    spec.trajectory.push_back({64.0 + 0.5 * i, 96.0 - 0.35 * i, 1.0, 0.0});
  }
  const SynthSequence seq = render(spec);
  RsstTracker tracker(seq.frames[0], seq.gt[0]);
  double sum = 0.0;
  for (size_t f = 1; f < seq.frames.size(); ++f) {
    sum += alignment_error(tracker.track(seq.frames[f]), seq.gt[f]);
  }
  CHECK(sum / double(seq.frames.size() - 1) < 1.0);
}

TEST_CASE("a scale ramp is followed within two filter steps") {
  SynthSpec spec = target_scene(93);
  const int n = 21;
  const double target_scale = 1.2;
  for (int i = 0; i < n; ++i) {
    spec.trajectory.push_back(
        {64.0, 48.0, std::pow(target_scale, double(i) / (n - 1)), 0.0});
  }
  const SynthSequence seq = render(spec);
  RsstTracker tracker(seq.frames[0], seq.gt[0]);
  for (size_t f = 1; f < seq.frames.size(); ++f) {
    (void)tracker.track(seq.frames[f]);
  }
  const double step_error = std::abs(std::log(tracker.pose().scale) -
                                     std::log(target_scale)) /
                            std::log(tracker.config().scale_step);
  CHECK(step_error <= 2.0);
}

TEST_CASE("a rotation ramp is followed within the bin spacing") {
  SynthSpec spec = target_scene(94);
  const int n = 21;
  for (int i = 0; i < n; ++i) {
    spec.trajectory.push_back({64.0, 48.0, 1.0, double(i)});
  }
  const SynthSequence seq = render(spec);
  RsstTracker tracker(seq.frames[0], seq.gt[0]);
  CornerQuad q = tracker.quad();
  for (size_t f = 1; f < seq.frames.size(); ++f) {
    q = tracker.track(seq.frames[f]);
  }
  CHECK(std::abs(tracker.pose().rotation_deg - (n - 1)) <= 2.0);
  CHECK(alignment_error(q, seq.gt.back()) < 2.0);
}

TEST_CASE("initial rotation is read off the region") {
  SynthSpec spec = target_scene(95);
  spec.trajectory.assign(1, SimilarityParams{64.0, 48.0, 1.0, 30.0});
  const SynthSequence seq = render(spec);
  RsstTracker tracker(seq.frames[0], seq.gt[0]);
  CHECK(tracker.pose().rotation_deg == doctest::Approx(30.0).epsilon(1e-9));
  CHECK(tt::quad_max_corner_dist(tracker.quad(), seq.gt[0]) < 1e-9);
}

TEST_CASE("a textureless region is flagged low confidence") {
  const GrayImage flat(96, 96, 0.5);
  RsstTracker tracker(flat, make_rect(36, 36, 24, 24));
  CHECK(tracker.low_confidence());
  // tracking a flat frame must not crash or move wildly
  const CornerQuad q = tracker.track(flat);
  CHECK(q.centroid().x == doctest::Approx(48.0).epsilon(0.2));
}

TEST_CASE("target disappearance drops the response peak") {
  SynthSpec spec = target_scene(96);
  spec.trajectory.assign(1, SimilarityParams{64.0, 48.0, 1.0, 0.0});
  const SynthSequence seq = render(spec);
  RsstTracker tracker(seq.frames[0], seq.gt[0]);
  CHECK(tracker.last_peak() == 0.0);  // no track() call yet
  (void)tracker.track(GrayImage(128, 96, 0.5));
  CHECK(tracker.last_peak() < 0.1);
  CHECK(tracker.low_confidence());
}

TEST_CASE("tracking is deterministic") {
  SynthSpec spec = target_scene(97);
  for (int i = 0; i < 5; ++i) {
    spec.trajectory.push_back({64.0 + i, 48.0, 1.0, 0.5 * i});
  }
  const SynthSequence seq = render(spec);
  RsstTracker a(seq.frames[0], seq.gt[0]);
  RsstTracker b(seq.frames[0], seq.gt[0]);
  for (size_t f = 1; f < seq.frames.size(); ++f) {
    const CornerQuad qa = a.track(seq.frames[f]);
    const CornerQuad qb = b.track(seq.frames[f]);
    CHECK(tt::quad_max_corner_dist(qa, qb) == 0.0);
  }
}

TEST_CASE("the center stays inside the frame") {
  SynthSpec spec = target_scene(98);
  // drive the target towards the frame edge
  for (int i = 0; i < 12; ++i) {
    spec.trajectory.push_back({64.0 + 4.5 * i, 48.0, 1.0, 0.0});
  }
  const SynthSequence seq = render(spec);
  RsstTracker tracker(seq.frames[0], seq.gt[0]);
  for (size_t f = 1; f < seq.frames.size(); ++f) {
    (void)tracker.track(seq.frames[f]);
    CHECK(tracker.pose().center.x >= 0.0);
    CHECK(tracker.pose().center.x <= 128.0);
    CHECK(tracker.pose().center.y >= 0.0);
    CHECK(tracker.pose().center.y <= 96.0);
  }
}

TEST_CASE("configuration and region validation") {
  const GrayImage frame = tt::textured(96, 96, 99);
  const CornerQuad region = make_rect(32, 32, 32, 32);

  RsstConfig even_scales;
  even_scales.n_scales = 32;
  CHECK_THROWS_AS(RsstTracker(frame, region, even_scales), Error);

  RsstConfig flat_step;
  flat_step.scale_step = 1.0;
  CHECK_THROWS_AS(RsstTracker(frame, region, flat_step), Error);

  RsstConfig ragged_rot;
  ragged_rot.rot_range = 20.0;
  ragged_rot.rot_step = 3.0;  // not a divisor
  CHECK_THROWS_AS(RsstTracker(frame, region, ragged_rot), Error);

  RsstConfig zero_eta;
  zero_eta.eta = 0.0;
  CHECK_THROWS_AS(RsstTracker(frame, region, zero_eta), Error);

  RsstConfig thin_padding;
  thin_padding.padding = 0.5;
  CHECK_THROWS_AS(RsstTracker(frame, region, thin_padding), Error);

  CHECK_THROWS_AS(RsstTracker(frame, make_rect(40, 40, 10, 10), RsstConfig{}),
                  Error);
  CHECK_THROWS_AS(RsstTracker(frame, make_rect(-200, -200, 32, 32),
                              RsstConfig{}),
                  Error);
  CHECK_THROWS_AS(RsstTracker(GrayImage{}, region, RsstConfig{}), Error);
}
