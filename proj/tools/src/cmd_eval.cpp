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

#include <glob.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "ptrack/error.hpp"
#include "ptrack/eval.hpp"

namespace ptrack::tool {

namespace {

struct EvalArgs {
  std::string results;  // glob pattern
  std::string dataset;
  int subseq = 0;
  std::string metric = "al";
  double fail_stop = -1.0;  // <0 disables
  std::string tracker;      // for --subseq re-runs
  int dof = 4;
  uint64_t seed = 1;
  std::string config;
  std::string out;
};

std::vector<std::string> glob_paths(const std::string& pattern) {
  glob_t g{};
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  std::vector<std::string> out;
  if (rc == 0) {
    for (size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  if (rc != 0 && rc != GLOB_NOMATCH) throw Error("glob failed: " + pattern);
  return out;
}

std::string robustness_path(const std::string& out) {
  std::filesystem::path p(out);
  const std::string ext = p.extension().string();
  p.replace_extension();
  return p.string() + "_robustness" + ext;
}

void run(const EvalArgs& a) {
  const Dataset ds = load_dataset(a.dataset);

  std::vector<RunRecord> records;
  if (a.subseq > 0) {
    if (a.tracker.empty()) {
      throw CLI::ValidationError("--subseq", "requires --tracker");
    }
    if (a.tracker == "rsst" && a.dof != 4) {
      throw CLI::ValidationError("--dof", "rsst supports only 4 DoF");
    }
    const Config cfg =
        a.config.empty() ? Config{} : Config::parse_file(a.config);
    for (int init : subsequence_inits(int(ds.size()), a.subseq)) {
      records.push_back(
          run_tracker_on(ds, a.tracker, a.dof, init, a.seed, cfg));
    }
  } else {
    const std::vector<std::string> paths = glob_paths(a.results);
    if (paths.empty()) throw Error("no results match: " + a.results);
    for (const std::string& p : paths) records.push_back(read_results_csv(p));
  }

  std::vector<SubsequenceRun> runs;
  for (const RunRecord& rec : records) {
    SubsequenceRun run;
    run.init_frame = rec.init_frame;
    for (const RunRow& row : rec.rows) {
      if (row.frame == rec.init_frame) continue;
      if (row.frame < 0 || size_t(row.frame) >= ds.gt.size()) {
        throw Error("results row for frame " + std::to_string(row.frame) +
                    " outside dataset of " + std::to_string(ds.gt.size()) +
                    " frames");
      }
      run.frames.push_back(score_frame(row.frame, row.lost, row.quad,
                                       ds.gt[size_t(row.frame)]));
    }
    runs.push_back(std::move(run));
  }

  const std::vector<double> taus = default_thresholds();
  const Metric metric = a.metric == "jac" ? Metric::Jaccard : Metric::Alignment;
  const std::optional<double> fail_stop =
      a.fail_stop < 0 ? std::nullopt : std::optional<double>(a.fail_stop);
  const Curve success = success_curve(runs, taus, metric, fail_stop);
  const Curve robust = robustness_curve(runs, taus);

  {
    std::ofstream os(a.out);
    if (!os) throw Error("cannot write " + a.out);
    write_curve_csv(os, success, "success");
  }
  const std::string rpath = robustness_path(a.out);
  {
    std::ofstream os(rpath);
    if (!os) throw Error("cannot write " + rpath);
    write_curve_csv(os, robust, "robustness");
  }

  size_t total = 0, lost = 0;
  double sum_al = 0.0;
  for (const SubsequenceRun& run : runs) {
    for (const FrameResult& f : run.frames) {
      ++total;
      if (f.lost) {
        ++lost;
      } else {
        sum_al += f.e_al;
      }
    }
  }
  const double mean_al =
      total > lost ? sum_al / double(total - lost) : std::nan("");
  std::printf("runs %zu, frames %zu, lost %zu, mean E_al %.4f px\n",
              runs.size(), total, lost, mean_al);
  std::printf("success AUC %.4f, wrote %s and %s\n", auc(success),
              a.out.c_str(), rpath.c_str());
}

}  // namespace

void register_eval(CLI::App& app) {
  auto args = std::make_shared<EvalArgs>();
  CLI::App* cmd = app.add_subcommand(
      "eval", "success/robustness curves from results or fresh runs");
  auto* results = cmd->add_option("--results", args->results,
                                  "glob of results CSVs to evaluate");
  auto* subseq =
      cmd->add_option("--subseq", args->subseq,
                      "re-run the tracker from k evenly spaced init frames")
          ->check(CLI::PositiveNumber);
  results->excludes(subseq);
  cmd->add_option("--dataset", args->dataset, "dataset directory")->required();
  cmd->add_option("--metric", args->metric,
                  "success metric: al (alignment) or jac (overlap)")
      ->check(CLI::IsMember({"al", "jac"}));
  cmd->add_option("--fail-stop", args->fail_stop,
                  "stop accounting a run after its first frame with "
                  "alignment error above this threshold");
  cmd->add_option("--tracker", args->tracker,
                  "tracker for --subseq runs: rsst or rklt")
      ->check(CLI::IsMember({"rsst", "rklt"}));
  cmd->add_option("--dof", args->dof, "warp model for --subseq runs")
      ->check(CLI::IsMember({2, 3, 4, 6, 8}));
  cmd->add_option("--seed", args->seed, "random seed for --subseq runs");
  cmd->add_option("--config", args->config, "config file for --subseq runs");
  cmd->add_option("--out", args->out, "success curve CSV (robustness lands "
                                      "next to it with a _robustness suffix)")
      ->required();
  cmd->callback([args] {
    if (args->subseq <= 0 && args->results.empty()) {
      throw CLI::RequiredError("--results or --subseq");
    }
    run(*args);
  });
}

}  // namespace ptrack::tool
