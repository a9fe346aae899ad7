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

#ifndef PTRACK_DATASET_HPP_
#define PTRACK_DATASET_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ptrack/geom.hpp"
#include "ptrack/image.hpp"

namespace ptrack {

// A sequence on disk: numbered frame images (frame%05d.png or .jpg) and a
// gt.txt with one line per frame, eight whitespace-separated reals
// `x1 y1 x2 y2 x3 y3 x4 y4` in TL,TR,BR,BL order. Lines starting with `#`
// are skipped.
struct Dataset {
  std::string name;  // directory basename
  std::string dir;
  std::vector<std::string> frame_paths;
  std::vector<CornerQuad> gt;

  size_t size() const { return frame_paths.size(); }
  GrayImage frame(size_t i) const;  // decodes on demand
};

Dataset load_dataset(const std::string& dir);

// One tracker run: enough metadata to replay it, plus per-frame outputs.
struct RunRow {
  int frame = 0;
  bool lost = false;
  CornerQuad quad;  // meaningless when lost
  double time_ms = 0.0;
};

struct RunRecord {
  std::string tracker;  // "rsst" or "rklt"
  int dof = 4;
  std::string dataset;  // sequence name
  int init_frame = 0;
  uint64_t seed = 0;
  uint64_t config_hash = 0;
  std::vector<RunRow> rows;
};

// CSV layout: `# key=value ...` metadata line, a column header, then one
// row per frame: `frame,x1,y1,...,x4,y4,time_ms`, or `frame,LOST,time_ms`
// for lost frames. Full double precision.
void write_results_csv(std::ostream& out, const RunRecord& rec);
void write_results_csv(const std::string& path, const RunRecord& rec);
RunRecord read_results_csv(std::istream& in, const std::string& origin);
RunRecord read_results_csv(const std::string& path);

}  // namespace ptrack

#endif  // PTRACK_DATASET_HPP_
