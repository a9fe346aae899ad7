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

#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "common.hpp"

namespace ptrack::tool {

namespace {

struct SynthArgs {
  std::string preset = "combined";
  std::string out;
  int frames = 100;
  uint64_t seed = 1;
  int width = 640;
  int height = 480;
  int target = 100;
};

void run(const SynthArgs& a) {
  const SynthSequence seq =
      make_preset(a.preset, a.frames, a.seed, a.width, a.height, a.target);
  export_sequence(seq, a.out);
  std::printf("wrote %zu frames and gt.txt to %s\n", seq.frames.size(),
              a.out.c_str());
}

}  // namespace

void register_synth(CLI::App& app) {
  auto args = std::make_shared<SynthArgs>();
  CLI::App* cmd = app.add_subcommand(
      "synth", "generate a synthetic dataset with exact ground truth");
  std::string presets;
  for (const std::string& p : preset_names()) {
    if (!presets.empty()) presets += ", ";
    presets += p;
  }
  cmd->add_option("--preset", args->preset, "one of: " + presets)
      ->check(CLI::IsMember(preset_names()));
  cmd->add_option("--out", args->out, "output dataset directory")->required();
  cmd->add_option("--frames", args->frames, "sequence length")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", args->seed, "random seed");
  cmd->add_option("--width", args->width, "frame width")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--height", args->height, "frame height")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--target", args->target, "target side length, px")
      ->check(CLI::PositiveNumber);
  cmd->callback([args] { run(*args); });
}

}  // namespace ptrack::tool
