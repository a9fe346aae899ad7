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

#ifndef PTRACK_TOOLS_COMMON_HPP_
#define PTRACK_TOOLS_COMMON_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ptrack/config.hpp"
#include "ptrack/dataset.hpp"
#include "ptrack/geom.hpp"
#include "ptrack/rklt.hpp"
#include "ptrack/rsst.hpp"
#include "ptrack/synth.hpp"

namespace ptrack::tool {

DofModel dof_from_int(int dof);

// Tracker configs from flat config-file keys (rsst.* / rklt.*); missing
// keys keep the built-in defaults.
RsstConfig rsst_config_from(const Config& c);
RkltConfig rklt_config_from(const Config& c, uint64_t seed);

// Runs one tracker over a dataset from init_frame to the end. The init
// frame is recorded with the ground-truth quad and zero time. When
// overlay_dir is non-empty, writes each frame with the output quad drawn.
RunRecord run_tracker_on(const Dataset& ds, const std::string& tracker,
                         int dof, int init_frame, uint64_t seed,
                         const Config& cfg,
                         const std::string& overlay_dir = {});

// Canned synthetic sequences; `name` one of: identity, translation,
// rotation, scale, combined, random, occlusion, noisy.
SynthSequence make_preset(const std::string& name, int frames, uint64_t seed,
                          int width, int height, int target);

std::vector<std::string> preset_names();

}  // namespace ptrack::tool

#endif  // PTRACK_TOOLS_COMMON_HPP_
