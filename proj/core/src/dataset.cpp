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

#include "ptrack/dataset.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ptrack/error.hpp"
#include "ptrack/imageio.hpp"

namespace fs = std::filesystem;

namespace ptrack {

namespace {

std::string frame_basename(size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame%05zu", index);
  return buf;
}

std::vector<CornerQuad> parse_gt(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open ground truth file: " + path);
  std::vector<CornerQuad> gt;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    double v[8];
    for (int i = 0; i < 8; ++i) {
      if (!(row >> v[i])) {
        throw Error(path + ":" + std::to_string(lineno) +
                    ": expected 8 numbers per line");
      }
    }
    std::string extra;
    if (row >> extra) {
      throw Error(path + ":" + std::to_string(lineno) +
                  ": expected 8 numbers per line");
    }
    CornerQuad q;
    for (int i = 0; i < 4; ++i) q.pts[size_t(i)] = {v[2 * i], v[2 * i + 1]};
    gt.push_back(q);
  }
  return gt;
}

}  // namespace

GrayImage Dataset::frame(size_t i) const {
  if (i >= frame_paths.size()) throw Error("frame index out of range");
  return load_gray(frame_paths[i]);
}

Dataset load_dataset(const std::string& dir) {
  const fs::path root(dir);
  if (!fs::is_directory(root)) throw Error("not a dataset directory: " + dir);

  Dataset ds;
  ds.dir = dir;
  ds.name = root.filename().string();
  if (ds.name.empty()) ds.name = root.parent_path().filename().string();
  ds.gt = parse_gt((root / "gt.txt").string());

  // Count the frame images present, then resolve each expected name, so a
  // surplus/missing count and a gap in the numbering report differently.
  size_t found = 0;
  for (const auto& entry : fs::directory_iterator(root)) {
    const std::string stem = entry.path().stem().string();
    const std::string ext = entry.path().extension().string();
    if (stem.size() == 10 && stem.rfind("frame", 0) == 0 &&
        (ext == ".png" || ext == ".jpg")) {
      ++found;
    }
  }
  if (found != ds.gt.size()) {
    throw Error(dir + ": gt.txt has " + std::to_string(ds.gt.size()) +
                " entries but " + std::to_string(found) + " frame images");
  }
  for (size_t i = 0; i < ds.gt.size(); ++i) {
    const std::string base = frame_basename(i);
    bool resolved = false;
    for (const char* ext : {".png", ".jpg"}) {
      const fs::path p = root / (base + ext);
      if (fs::exists(p)) {
        ds.frame_paths.push_back(p.string());
        resolved = true;
        break;
      }
    }
    if (!resolved) {
      throw Error(dir + ": missing frame image " + base + ".png|.jpg");
    }
  }
  return ds;
}

void write_results_csv(std::ostream& out, const RunRecord& rec) {
  out << "# tracker=" << rec.tracker << " dof=" << rec.dof
      << " dataset=" << rec.dataset << " init_frame=" << rec.init_frame
      << " seed=" << rec.seed << " config_hash=" << rec.config_hash << "\n";
  out << "frame,x1,y1,x2,y2,x3,y3,x4,y4,time_ms\n";
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  for (const RunRow& r : rec.rows) {
    out << r.frame << ',';
    if (r.lost) {
      out << "LOST";
    } else {
      for (int i = 0; i < 4; ++i) {
        if (i) out << ',';
        out << num(r.quad.pts[size_t(i)].x) << ','
            << num(r.quad.pts[size_t(i)].y);
      }
    }
    out << ',' << num(r.time_ms) << "\n";
  }
}

void write_results_csv(const std::string& path, const RunRecord& rec) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write results file: " + path);
  write_results_csv(out, rec);
  if (!out.flush()) throw Error("write failed: " + path);
}

RunRecord read_results_csv(std::istream& in, const std::string& origin) {
  RunRecord rec;
  std::string line;
  int lineno = 0;
  bool seen_meta = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      // Metadata: space-separated key=value tokens.
      std::istringstream meta(line.substr(1));
      std::string tok;
      while (meta >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
        try {
          if (k == "tracker") rec.tracker = v;
          else if (k == "dof") rec.dof = std::stoi(v);
          else if (k == "dataset") rec.dataset = v;
          else if (k == "init_frame") rec.init_frame = std::stoi(v);
          else if (k == "seed") rec.seed = std::stoull(v);
          else if (k == "config_hash") rec.config_hash = std::stoull(v);
        } catch (const std::exception&) {
          throw Error(origin + ":" + std::to_string(lineno) +
                      ": bad metadata value in " + tok);
        }
      }
      seen_meta = true;
      continue;
    }
    if (line.rfind("frame,", 0) == 0) continue;  // column header

    std::vector<std::string> fields;
    std::string field;
    std::istringstream row(line);
    while (std::getline(row, field, ',')) fields.push_back(field);
    const auto bad = [&](const char* what) {
      return Error(origin + ":" + std::to_string(lineno) + ": " + what);
    };
    try {
      RunRow r;
      if (fields.size() == 3 && fields[1] == "LOST") {
        r.frame = std::stoi(fields[0]);
        r.lost = true;
        r.time_ms = std::stod(fields[2]);
      } else if (fields.size() == 10) {
        r.frame = std::stoi(fields[0]);
        for (int i = 0; i < 4; ++i) {
          r.quad.pts[size_t(i)] = {std::stod(fields[size_t(1 + 2 * i)]),
                                   std::stod(fields[size_t(2 + 2 * i)])};
        }
        r.time_ms = std::stod(fields[9]);
      } else {
        throw bad("expected 10 fields or a LOST row");
      }
      rec.rows.push_back(r);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw bad("unparseable row");
    }
  }
  if (!seen_meta) throw Error(origin + ": missing metadata header line");
  return rec;
}

RunRecord read_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open results file: " + path);
  return read_results_csv(in, path);
}

}  // namespace ptrack
