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

#pragma once

#include <array>
#include <span>

namespace ptrack {

// Planar geometry for target poses: points, corner quads, 4-parameter
// similarity poses, and general 3x3 homogeneous warps.
//
// Conventions used throughout the library:
//  - image coordinates are continuous; pixel (i, j) covers [i,i+1)x[j,j+1)
//    and its center is (i+0.5, j+0.5);
//  - angles are degrees in the public interface; positive rotation turns
//    the +x axis towards +y (clockwise on screen with y pointing down);
//  - quad corners are ordered top-left, top-right, bottom-right, bottom-left
//    in the target's own (unrotated) frame.

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

Point2 operator+(Point2 a, Point2 b);
Point2 operator-(Point2 a, Point2 b);
Point2 operator*(double s, Point2 p);
double dot(Point2 a, Point2 b);
double norm(Point2 p);

struct CornerQuad {
  std::array<Point2, 4> pts{};

  Point2 centroid() const;
  // Signed shoelace area; positive for the conventional corner order.
  double area() const;
};

// Axis-aligned rectangle helper: corners of [x, x+w] x [y, y+h].
CornerQuad make_rect(double x, double y, double w, double h);

// Pose of a planar target: translation, isotropic scale and in-plane
// rotation, applied about the origin of the target frame:
//   p_image = scale * R(rotation_deg) * p_target + (tx, ty).
struct SimilarityParams {
  double tx = 0.0;
  double ty = 0.0;
  double scale = 1.0;
  double rotation_deg = 0.0;
};

// Row-major 3x3 homogeneous transform. Defaults to identity.
struct WarpMatrix {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  double& operator()(int r, int c) { return m[r * 3 + c]; }
  double operator()(int r, int c) const { return m[r * 3 + c]; }
};

// Warp families a tracker can estimate, by degree-of-freedom count.
enum class DofModel {
  Translation2,  // tx, ty
  TransScale3,   // tx, ty, log-scale
  Similarity4,   // tx, ty, log-scale, rotation
  Affine6,       // full 2x3
  Homography8,   // projective, bottom-right entry fixed to 1
};

int dof_count(DofModel dof);

WarpMatrix params_to_matrix(const SimilarityParams& p);

// Inverse of params_to_matrix. The input must be a similarity (uniform
// scale, no shear); throws Error otherwise. Rotation is reported in
// (-180, 180].
SimilarityParams matrix_to_params(const WarpMatrix& w);

// c = a * b (apply b first, then a).
WarpMatrix compose(const WarpMatrix& a, const WarpMatrix& b);

// Throws Error when the matrix is singular.
WarpMatrix invert(const WarpMatrix& w);

// Applies a homogeneous warp to a point. Throws Error when the point maps
// to the line at infinity (zero homogeneous coordinate).
Point2 apply(const WarpMatrix& w, Point2 p);

CornerQuad apply_warp(const WarpMatrix& w, const CornerQuad& q);

// Least-squares similarity from point correspondences (closed form via the
// centered cross/dot sums; reflections are never produced). Needs at least
// two pairs and a non-degenerate source spread; throws Error otherwise.
SimilarityParams fit_similarity(std::span<const Point2> src,
                                std::span<const Point2> dst);

// Projects a similarity pose onto a warp family: Translation2 keeps only
// the translation, TransScale3 drops rotation, everything else embeds the
// full similarity (exact for Similarity4/Affine6/Homography8).
WarpMatrix project_similarity(const SimilarityParams& p, DofModel dof);

}  // namespace ptrack
