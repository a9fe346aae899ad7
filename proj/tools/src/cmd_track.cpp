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

struct TrackArgs {
  std::string tracker;
  int dof = 4;
  std::string dataset;
  int init_frame = 0;
  uint64_t seed = 1;
  std::string config;
  std::string out;
  std::string overlay;
};

void run(const TrackArgs& a) {
  if (a.tracker == "rsst" && a.dof != 4) {
    throw CLI::ValidationError("--dof", "rsst supports only 4 DoF");
  }
  const Config cfg =
      a.config.empty() ? Config{} : Config::parse_file(a.config);
  const Dataset ds = load_dataset(a.dataset);
  const RunRecord rec = run_tracker_on(ds, a.tracker, a.dof, a.init_frame,
                                       a.seed, cfg, a.overlay);
  write_results_csv(a.out, rec);

  size_t lost = 0;
  for (const RunRow& r : rec.rows) lost += r.lost;
  std::printf("tracked %zu frames (%zu lost), wrote %s\n",
              rec.rows.size() - 1, lost, a.out.c_str());
}

}  // namespace

void register_track(CLI::App& app) {
  auto args = std::make_shared<TrackArgs>();
  CLI::App* cmd =
      app.add_subcommand("track", "run a tracker over a dataset directory");
  cmd->add_option("--tracker", args->tracker, "tracker: rsst or rklt")
      ->required()
      ->check(CLI::IsMember({"rsst", "rklt"}));
  cmd->add_option("--dof", args->dof,
                  "warp model: 2, 3, 4, 6 or 8 degrees of freedom")
      ->check(CLI::IsMember({2, 3, 4, 6, 8}));
  cmd->add_option("--dataset", args->dataset, "dataset directory")->required();
  cmd->add_option("--init-frame", args->init_frame,
                  "frame index to initialize from");
  cmd->add_option("--seed", args->seed, "random seed");
  cmd->add_option("--config", args->config, "config file (section.key = value)");
  cmd->add_option("--out", args->out, "output results CSV")->required();
  cmd->add_option("--overlay", args->overlay,
                  "directory for frames with the output quad drawn");
  cmd->callback([args] { run(*args); });
}

}  // namespace ptrack::tool
