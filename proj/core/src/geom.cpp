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

#include "ptrack/geom.hpp"

#include <cmath>

#include "ptrack/error.hpp"

namespace ptrack {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;
}  // namespace

Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
double norm(Point2 p) { return std::hypot(p.x, p.y); }

Point2 CornerQuad::centroid() const {
  return {(pts[0].x + pts[1].x + pts[2].x + pts[3].x) / 4.0,
          (pts[0].y + pts[1].y + pts[2].y + pts[3].y) / 4.0};
}

double CornerQuad::area() const {
  double a = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Point2& p = pts[i];
    const Point2& q = pts[(i + 1) % 4];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

CornerQuad make_rect(double x, double y, double w, double h) {
  return CornerQuad{{{{x, y}, {x + w, y}, {x + w, y + h}, {x, y + h}}}};
}

int dof_count(DofModel dof) {
  switch (dof) {
    case DofModel::Translation2: return 2;
    case DofModel::TransScale3: return 3;
    case DofModel::Similarity4: return 4;
    case DofModel::Affine6: return 6;
    case DofModel::Homography8: return 8;
  }
  throw Error("dof_count: unknown warp family");
}

WarpMatrix params_to_matrix(const SimilarityParams& p) {
  const double c = std::cos(p.rotation_deg * kDegToRad);
  const double s = std::sin(p.rotation_deg * kDegToRad);
  WarpMatrix w;
  w(0, 0) = p.scale * c;
  w(0, 1) = -p.scale * s;
  w(0, 2) = p.tx;
  w(1, 0) = p.scale * s;
  w(1, 1) = p.scale * c;
  w(1, 2) = p.ty;
  return w;
}

SimilarityParams matrix_to_params(const WarpMatrix& w) {
  const double a = w(0, 0), b = w(0, 1), c = w(1, 0), d = w(1, 1);
  const double scale = std::hypot(a, c);
  if (!(scale > 0.0)) throw Error("matrix_to_params: zero scale");
  // A similarity has the form [a -c; c a]: check both structure equations
  // relative to the scale magnitude.
  const double tol = 1e-9 * scale;
  if (std::abs(a - d) > tol || std::abs(b + c) > tol ||
      std::abs(w(2, 0)) > 1e-12 || std::abs(w(2, 1)) > 1e-12 ||
      std::abs(w(2, 2) - 1.0) > 1e-12) {
    throw Error("matrix_to_params: matrix is not a similarity");
  }
  SimilarityParams p;
  p.scale = scale;
  p.rotation_deg = std::atan2(c, a) * kRadToDeg;
  if (p.rotation_deg <= -180.0) p.rotation_deg += 360.0;
  p.tx = w(0, 2);
  p.ty = w(1, 2);
  return p;
}

WarpMatrix compose(const WarpMatrix& a, const WarpMatrix& b) {
  WarpMatrix c;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

WarpMatrix invert(const WarpMatrix& w) {
  const auto& m = w.m;
  const double det = m[0] * (m[4] * m[8] - m[5] * m[7]) -
                     m[1] * (m[3] * m[8] - m[5] * m[6]) +
                     m[2] * (m[3] * m[7] - m[4] * m[6]);
  if (std::abs(det) < 1e-300) throw Error("invert: singular warp matrix");
  const double inv = 1.0 / det;
  WarpMatrix r;
  r.m[0] = (m[4] * m[8] - m[5] * m[7]) * inv;
  r.m[1] = (m[2] * m[7] - m[1] * m[8]) * inv;
  r.m[2] = (m[1] * m[5] - m[2] * m[4]) * inv;
  r.m[3] = (m[5] * m[6] - m[3] * m[8]) * inv;
  r.m[4] = (m[0] * m[8] - m[2] * m[6]) * inv;
  r.m[5] = (m[2] * m[3] - m[0] * m[5]) * inv;
  r.m[6] = (m[3] * m[7] - m[4] * m[6]) * inv;
  r.m[7] = (m[1] * m[6] - m[0] * m[7]) * inv;
  r.m[8] = (m[0] * m[4] - m[1] * m[3]) * inv;
  return r;
}

Point2 apply(const WarpMatrix& w, Point2 p) {
  const double x = w(0, 0) * p.x + w(0, 1) * p.y + w(0, 2);
  const double y = w(1, 0) * p.x + w(1, 1) * p.y + w(1, 2);
  const double z = w(2, 0) * p.x + w(2, 1) * p.y + w(2, 2);
  if (std::abs(z) < 1e-300) throw Error("apply: point maps to infinity");
  return {x / z, y / z};
}

CornerQuad apply_warp(const WarpMatrix& w, const CornerQuad& q) {
  CornerQuad r;
  for (int i = 0; i < 4; ++i) r.pts[i] = apply(w, q.pts[i]);
  return r;
}

SimilarityParams fit_similarity(std::span<const Point2> src,
                                std::span<const Point2> dst) {
  if (src.size() != dst.size()) {
    throw Error("fit_similarity: size mismatch");
  }
  const size_t n = src.size();
  if (n < 2) throw Error("fit_similarity: need at least 2 pairs");

  Point2 sc{0, 0}, dc{0, 0};
  for (size_t i = 0; i < n; ++i) {
    sc = sc + src[i];
    dc = dc + dst[i];
  }
  sc = (1.0 / double(n)) * sc;
  dc = (1.0 / double(n)) * dc;

  // Treat centered points as complex numbers; the least-squares similarity
  // is dst' = q * src' with q = sum(conj(src') * dst') / sum(|src'|^2).
  double dotp = 0.0, crossp = 0.0, snorm = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Point2 a = src[i] - sc;
    const Point2 b = dst[i] - dc;
    dotp += a.x * b.x + a.y * b.y;
    crossp += a.x * b.y - a.y * b.x;
    snorm += a.x * a.x + a.y * a.y;
  }
  if (snorm < 1e-12) {
    throw Error("fit_similarity: degenerate source points");
  }

  SimilarityParams p;
  p.scale = std::sqrt(dotp * dotp + crossp * crossp) / snorm;
  if (!(p.scale > 0.0)) {
    throw Error("fit_similarity: degenerate correspondence");
  }
  p.rotation_deg = std::atan2(crossp, dotp) * kRadToDeg;
  const double c = std::cos(p.rotation_deg * kDegToRad);
  const double s = std::sin(p.rotation_deg * kDegToRad);
  p.tx = dc.x - p.scale * (c * sc.x - s * sc.y);
  p.ty = dc.y - p.scale * (s * sc.x + c * sc.y);
  return p;
}

WarpMatrix project_similarity(const SimilarityParams& p, DofModel dof) {
  switch (dof) {
    case DofModel::Translation2: {
      WarpMatrix w;
      w(0, 2) = p.tx;
      w(1, 2) = p.ty;
      return w;
    }
    case DofModel::TransScale3: {
      WarpMatrix w;
      w(0, 0) = w(1, 1) = p.scale;
      w(0, 2) = p.tx;
      w(1, 2) = p.ty;
      return w;
    }
    case DofModel::Similarity4:
    case DofModel::Affine6:
    case DofModel::Homography8:
      return params_to_matrix(p);
  }
  throw Error("project_similarity: unknown warp family");
}

}  // namespace ptrack
