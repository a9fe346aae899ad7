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

#include "ptrack/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptrack/error.hpp"

namespace ptrack {

double alignment_error(const CornerQuad& tracked, const CornerQuad& gt) {
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Point2 d = tracked.pts[i] - gt.pts[i];
    sum += d.x * d.x + d.y * d.y;
  }
  return std::sqrt(sum / 4.0);
}

namespace {

using Poly = std::vector<Point2>;

double poly_area(const Poly& p) {
  double a = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    const Point2& u = p[i];
    const Point2& v = p[(i + 1) % p.size()];
    a += u.x * v.y - v.x * u.y;
  }
  return 0.5 * a;
}

// Orients a convex polygon so its signed area is positive; required by the
// half-plane test in clip().
Poly oriented(const CornerQuad& q) {
  Poly p(q.pts.begin(), q.pts.end());
  if (poly_area(p) < 0.0) std::reverse(p.begin(), p.end());
  return p;
}

// Sutherland-Hodgman: clips `subject` against the half-plane to the left
// of edge a->b (for positively oriented clip polygons).
Poly clip(const Poly& subject, Point2 a, Point2 b) {
  Poly out;
  const double ex = b.x - a.x, ey = b.y - a.y;
  auto side = [&](Point2 p) { return ex * (p.y - a.y) - ey * (p.x - a.x); };
  for (size_t i = 0; i < subject.size(); ++i) {
    const Point2 cur = subject[i];
    const Point2 nxt = subject[(i + 1) % subject.size()];
    const double sc = side(cur), sn = side(nxt);
    if (sc >= 0.0) out.push_back(cur);
    if ((sc < 0.0 && sn > 0.0) || (sc > 0.0 && sn < 0.0)) {
      const double t = sc / (sc - sn);
      out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
  return out;
}

bool finite_quad(const CornerQuad& q) {
  for (const Point2& p : q.pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
  }
  return true;
}

}  // namespace

double jaccard_error(const CornerQuad& tracked, const CornerQuad& gt) {
  if (!finite_quad(tracked) || !finite_quad(gt)) return 1.0;
  const double a1 = std::abs(tracked.area());
  const double a2 = std::abs(gt.area());
  if (a1 <= 0.0 || a2 <= 0.0) return 1.0;

  Poly inter = oriented(tracked);
  const Poly clipper = oriented(gt);
  for (size_t i = 0; i < clipper.size() && !inter.empty(); ++i) {
    inter = clip(inter, clipper[i], clipper[(i + 1) % clipper.size()]);
  }
  const double ai = inter.size() >= 3 ? std::abs(poly_area(inter)) : 0.0;
  const double au = a1 + a2 - ai;
  return 1.0 - ai / au;
}

FrameResult score_frame(int frame, bool lost, const CornerQuad& tracked,
                        const CornerQuad& gt) {
  FrameResult r;
  r.frame = frame;
  r.lost = lost;
  if (lost) {
    r.e_al = std::numeric_limits<double>::infinity();
    r.e_jac = 1.0;
  } else {
    r.e_al = alignment_error(tracked, gt);
    r.e_jac = jaccard_error(tracked, gt);
  }
  return r;
}

std::vector<double> default_thresholds() {
  std::vector<double> t;
  for (int i = 0; i <= 40; ++i) t.push_back(0.5 * i);
  return t;
}

namespace {
double error_of(const FrameResult& f, Metric m) {
  return m == Metric::Alignment ? f.e_al : f.e_jac;
}
}  // namespace

Curve success_curve(std::span<const SubsequenceRun> runs,
                    std::span<const double> thresholds, Metric metric,
                    std::optional<double> fail_stop_tau) {
  if (thresholds.empty()) throw Error("success_curve: no thresholds");

  // Collect the frames that count; fail-stop truncates each run after its
  // first alignment failure.
  std::vector<const FrameResult*> pool;
  for (const SubsequenceRun& run : runs) {
    for (const FrameResult& f : run.frames) {
      pool.push_back(&f);
      if (fail_stop_tau && (f.lost || f.e_al > *fail_stop_tau)) break;
    }
  }

  Curve c;
  c.metric = metric;
  c.runs = runs.size();
  c.frames = pool.size();
  c.fail_stop_tau = fail_stop_tau;
  for (double tau : thresholds) {
    size_t ok = 0;
    for (const FrameResult* f : pool) {
      if (!f->lost && error_of(*f, metric) <= tau) ++ok;
    }
    c.points.emplace_back(tau, pool.empty() ? 0.0 : double(ok) / pool.size());
  }
  return c;
}

Curve robustness_curve(std::span<const SubsequenceRun> runs,
                       std::span<const double> thresholds) {
  if (thresholds.empty()) throw Error("robustness_curve: no thresholds");
  Curve c;
  c.metric = Metric::Alignment;
  c.runs = runs.size();
  for (const SubsequenceRun& run : runs) c.frames += run.frames.size();
  for (double tau : thresholds) {
    size_t ok = 0;
    for (const SubsequenceRun& run : runs) {
      bool failed = false;
      for (const FrameResult& f : run.frames) {
        if (f.lost || f.e_al > tau) {
          failed = true;
          break;
        }
      }
      if (!failed) ++ok;
    }
    c.points.emplace_back(tau, runs.empty() ? 0.0 : double(ok) / runs.size());
  }
  return c;
}

double auc(const Curve& c) {
  if (c.points.size() < 2) return c.points.empty() ? 0.0 : c.points[0].second;
  double area = 0.0;
  for (size_t i = 1; i < c.points.size(); ++i) {
    const auto& [t0, v0] = c.points[i - 1];
    const auto& [t1, v1] = c.points[i];
    area += 0.5 * (v0 + v1) * (t1 - t0);
  }
  const double span = c.points.back().first - c.points.front().first;
  return span > 0.0 ? area / span : c.points.front().second;
}

std::vector<int> subsequence_inits(int length, int k) {
  if (length < 1) throw Error("subsequence_inits: empty sequence");
  if (k < 1) throw Error("subsequence_inits: k must be positive");
  // Sequences shorter than the init count collapse to a single run; above
  // that the floor positions are strictly increasing.
  if (length <= k) return {0};
  std::vector<int> inits;
  inits.reserve(k);
  for (int i = 0; i < k; ++i) inits.push_back(int((long(i) * length) / k));
  return inits;
}

long effective_frames(int length, std::span<const int> inits) {
  long total = 0;
  for (int f : inits) total += std::max(0, length - f - 1);
  return total;
}

long run_frames(int length, std::span<const int> inits) {
  long total = 0;
  for (int f : inits) total += std::max(0, length - f);
  return total;
}

void write_curve_csv(std::ostream& os, const Curve& c, const char* name) {
  os << "# curve=" << name
     << " metric=" << (c.metric == Metric::Alignment ? "al" : "jac")
     << " runs=" << c.runs << " frames=" << c.frames;
  if (c.fail_stop_tau) os << " fail_stop_tau=" << *c.fail_stop_tau;
  if (c.metric == Metric::Jaccard) {
    os << " note=thresholds-apply-to-jaccard-error(1-overlap)";
  }
  os << "\nthreshold,value\n";
  os.precision(17);
  for (const auto& [t, v] : c.points) os << t << ',' << v << '\n';
}

}  // namespace ptrack
