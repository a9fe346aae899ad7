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

// Microbenchmarks for the hot paths plus whole-frame timings for both
// trackers on a 640x480 sequence with a 100 px target, the sizing used for
// the throughput figures in the README.

#include <benchmark/benchmark.h>

#include <vector>

#include "ptrack/dcf.hpp"
#include "ptrack/features.hpp"
#include "ptrack/geom.hpp"
#include "ptrack/ic.hpp"
#include "ptrack/image.hpp"
#include "ptrack/klt.hpp"
#include "ptrack/rklt.hpp"
#include "ptrack/rsst.hpp"
#include "ptrack/synth.hpp"

namespace {

using namespace ptrack;

const SynthSequence& sequence() {
  static const SynthSequence seq = [] {
    SynthSpec spec;
    spec.texture = noise_texture(100, 100, 0xbf, 2, 0.05, 0.95);
    spec.background = noise_texture(640, 480, 0xbe, 3, 0.25, 0.55);
    spec.trajectory =
        random_trajectory(32, 5, {320.0, 240.0, 1.0, 0.0}, {});
    return render(spec);
  }();
  return seq;
}

void BM_Hog(benchmark::State& state) {
  const GrayImage patch = noise_texture(96, 96, 1, 2, 0.05, 0.95);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hog(patch, 4));
  }
}
BENCHMARK(BM_Hog);

void BM_ExtractPatch(benchmark::State& state) {
  const GrayImage& frame = sequence().frames[0];
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        extract_patch(frame, {320.0, 240.0}, 200.0, 200.0, 1.1, 12.0, 96,
                      96));
  }
}
BENCHMARK(BM_ExtractPatch);

void BM_DcfRespond(benchmark::State& state) {
  const GrayImage patch = noise_texture(96, 96, 2, 2, 0.05, 0.95);
  const FeatureMap x = hog(patch, 4);
  const Grid label = gaussian_label(x.w, x.h, 1.5, 1.5);
  const DcfModel model = dcf_train_init(x, label, 0.01);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dcf_respond(model, x));
  }
}
BENCHMARK(BM_DcfRespond);

void BM_KltTrack(benchmark::State& state) {
  const GrayImage& a = sequence().frames[0];
  const GrayImage& b = sequence().frames[1];
  std::vector<Point2> pts;
  for (int j = 0; j < 10; ++j) {
    for (int i = 0; i < 10; ++i) {
      pts.push_back({280.5 + 9.0 * i, 200.5 + 9.0 * j});
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(klt_track(a, b, pts, {}));
  }
}
BENCHMARK(BM_KltTrack);

void BM_IcRefine(benchmark::State& state) {
  const SynthSequence& seq = sequence();
  const GrayImage tpx =
      extract_patch(seq.frames[0], seq.gt[0].centroid(), 100.0, 100.0, 1.0,
                    0.0, 100, 100);
  const IcTemplate tmpl(tpx, DofModel::Similarity4);
  const Point2 c = seq.gt[0].centroid();
  const WarpMatrix init = params_to_matrix({c.x + 1.5, c.y - 1.0, 1.0, 0.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(ic_refine(tmpl, seq.frames[0], init));
  }
}
BENCHMARK(BM_IcRefine);

void BM_RsstFrame(benchmark::State& state) {
  const SynthSequence& seq = sequence();
  RsstTracker tracker(seq.frames[0], seq.gt[0]);
  size_t i = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tracker.track(seq.frames[i]));
    i = i + 1 < seq.frames.size() ? i + 1 : 1;
  }
}
BENCHMARK(BM_RsstFrame)->Unit(benchmark::kMillisecond);

void BM_RkltFrame(benchmark::State& state) {
  const SynthSequence& seq = sequence();
  RkltTracker tracker(seq.frames[0], seq.gt[0], DofModel::Similarity4);
  size_t i = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tracker.track(seq.frames[i]));
    i = i + 1 < seq.frames.size() ? i + 1 : 1;
  }
}
BENCHMARK(BM_RkltFrame)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
