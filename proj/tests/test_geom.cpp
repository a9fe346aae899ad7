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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "ptrack/error.hpp"
#include "ptrack/geom.hpp"
#include "testutil.hpp"

using namespace ptrack;

TEST_CASE("similarity applies scale, rotation, then translation") {
  // Hand value: p=(1.5, 0), scale 1, rotation 30 deg, t=(2, -1).
  // R(30)*(1.5,0) = (1.5 cos30, 1.5 sin30) = (1.29904, 0.75);
  // +t = (2 + 1.5*cos30, -0.25).
  const WarpMatrix w = params_to_matrix({2.0, -1.0, 1.0, 30.0});
  const Point2 q = apply(w, {1.5, 0.0});
  CHECK(q.x == doctest::Approx(2.0 + 1.5 * std::cos(30.0 * M_PI / 180.0))
                   .epsilon(1e-12));
  CHECK(q.y == doctest::Approx(-0.25).epsilon(1e-12));
}

TEST_CASE("positive rotation turns +x towards +y") {
  const WarpMatrix w = params_to_matrix({0, 0, 1.0, 90.0});
  const Point2 q = apply(w, {1.0, 0.0});
  CHECK(q.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(q.y == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("params/matrix round trip") {
  tt::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    SimilarityParams p;
    p.tx = rng.uniform(-100, 100);
    p.ty = rng.uniform(-100, 100);
    p.scale = rng.uniform(0.2, 5.0);
    p.rotation_deg = rng.uniform(-179.0, 180.0);
    const SimilarityParams q = matrix_to_params(params_to_matrix(p));
    CHECK(q.tx == doctest::Approx(p.tx).epsilon(1e-12));
    CHECK(q.ty == doctest::Approx(p.ty).epsilon(1e-12));
    CHECK(q.scale == doctest::Approx(p.scale).epsilon(1e-12));
    CHECK(q.rotation_deg == doctest::Approx(p.rotation_deg).epsilon(1e-12));
  }
}

TEST_CASE("matrix_to_params rejects shear") {
  WarpMatrix w;
  w(0, 1) = 0.3;
  CHECK_THROWS_AS((void)matrix_to_params(w), Error);
}

TEST_CASE("compose and invert") {
  tt::Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const WarpMatrix a = params_to_matrix({rng.uniform(-10, 10),
                                           rng.uniform(-10, 10),
                                           rng.uniform(0.5, 2.0),
                                           rng.uniform(-180, 180)});
    const WarpMatrix inv = invert(a);
    const WarpMatrix id = compose(a, inv);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        CHECK(id(r, c) == doctest::Approx(r == c ? 1.0 : 0.0).epsilon(1e-10));
      }
    }
    // compose applies the right factor first
    const WarpMatrix b = params_to_matrix({1, 2, 1.0, 0.0});
    const Point2 p{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const Point2 via = apply(a, apply(b, p));
    const Point2 direct = apply(compose(a, b), p);
    CHECK(norm(via - direct) < 1e-10);
  }
}

TEST_CASE("invert rejects singular matrices") {
  WarpMatrix w;
  w(0, 0) = 0.0;
  w(1, 1) = 0.0;  // rank 1
  w(0, 1) = 0.0;
  w(1, 0) = 0.0;
  CHECK_THROWS_AS((void)invert(w), Error);
}

TEST_CASE("make_rect corner order and area sign") {
  const CornerQuad q = make_rect(2, 3, 4, 5);
  CHECK(q.pts[0].x == 2);
  CHECK(q.pts[0].y == 3);
  CHECK(q.pts[1].x == 6);
  CHECK(q.pts[1].y == 3);
  CHECK(q.pts[2].x == 6);
  CHECK(q.pts[2].y == 8);
  CHECK(q.pts[3].x == 2);
  CHECK(q.pts[3].y == 8);
  CHECK(q.area() == doctest::Approx(20.0));
  CHECK(q.centroid().x == doctest::Approx(4.0));
  CHECK(q.centroid().y == doctest::Approx(5.5));
}

TEST_CASE("fit_similarity recovers an exact similarity") {
  tt::Rng rng(13);
  const SimilarityParams truth{2.0, -1.0, 1.5, 30.0};
  const WarpMatrix w = params_to_matrix(truth);
  std::vector<Point2> src, dst;
  for (int i = 0; i < 20; ++i) {
    const Point2 p{rng.uniform(-40, 40), rng.uniform(-40, 40)};
    src.push_back(p);
    dst.push_back(apply(w, p));
  }
  const SimilarityParams fit = fit_similarity(src, dst);
  CHECK(fit.tx == doctest::Approx(truth.tx).epsilon(1e-9));
  CHECK(fit.ty == doctest::Approx(truth.ty).epsilon(1e-9));
  CHECK(fit.scale == doctest::Approx(truth.scale).epsilon(1e-9));
  CHECK(fit.rotation_deg == doctest::Approx(truth.rotation_deg).epsilon(1e-9));
}

TEST_CASE("fit_similarity is least squares: pair order does not matter") {
  tt::Rng rng(14);
  std::vector<Point2> src, dst;
  for (int i = 0; i < 12; ++i) {
    src.push_back({rng.uniform(-10, 10), rng.uniform(-10, 10)});
    dst.push_back({rng.uniform(-10, 10), rng.uniform(-10, 10)});
  }
  const SimilarityParams a = fit_similarity(src, dst);
  std::vector<Point2> src_r(src.rbegin(), src.rend());
  std::vector<Point2> dst_r(dst.rbegin(), dst.rend());
  const SimilarityParams b = fit_similarity(src_r, dst_r);
  CHECK(a.tx == doctest::Approx(b.tx).epsilon(1e-9));
  CHECK(a.ty == doctest::Approx(b.ty).epsilon(1e-9));
  CHECK(a.scale == doctest::Approx(b.scale).epsilon(1e-9));
  CHECK(a.rotation_deg == doctest::Approx(b.rotation_deg).epsilon(1e-9));
}

TEST_CASE("fit_similarity error cases") {
  const std::vector<Point2> one{{0, 0}};
  const std::vector<Point2> one_d{{1, 1}};
  CHECK_THROWS_AS((void)fit_similarity(one, one_d), Error);
  // coincident source points: no spread to determine scale/rotation
  const std::vector<Point2> co{{1, 1}, {1, 1}, {1, 1}};
  const std::vector<Point2> co_d{{0, 0}, {1, 0}, {2, 0}};
  CHECK_THROWS_AS((void)fit_similarity(co, co_d), Error);
}

TEST_CASE("project_similarity restricts the family") {
  const SimilarityParams p{3.0, -2.0, 1.4, 25.0};
  const WarpMatrix t2 = project_similarity(p, DofModel::Translation2);
  CHECK(t2(0, 0) == 1.0);
  CHECK(t2(0, 1) == 0.0);
  CHECK(t2(0, 2) == 3.0);
  CHECK(t2(1, 2) == -2.0);
  const WarpMatrix t3 = project_similarity(p, DofModel::TransScale3);
  CHECK(t3(0, 0) == doctest::Approx(1.4));
  CHECK(t3(0, 1) == 0.0);
  const WarpMatrix t4 = project_similarity(p, DofModel::Similarity4);
  const SimilarityParams back = matrix_to_params(t4);
  CHECK(back.rotation_deg == doctest::Approx(25.0));
}

TEST_CASE("apply_warp maps all four corners") {
  const WarpMatrix w = params_to_matrix({10, 20, 2.0, 90.0});
  const CornerQuad q = apply_warp(w, make_rect(-1, -1, 2, 2));
  // (-1,-1) -> 2*R90*(-1,-1)+t = 2*(1,-1)+t = (12, 18)
  CHECK(q.pts[0].x == doctest::Approx(12.0));
  CHECK(q.pts[0].y == doctest::Approx(18.0));
  // rotation by 90 about the centroid preserves the centroid
  CHECK(q.centroid().x == doctest::Approx(10.0));
  CHECK(q.centroid().y == doctest::Approx(20.0));
}

TEST_CASE("dof_count") {
  CHECK(dof_count(DofModel::Translation2) == 2);
  CHECK(dof_count(DofModel::TransScale3) == 3);
  CHECK(dof_count(DofModel::Similarity4) == 4);
  CHECK(dof_count(DofModel::Affine6) == 6);
  CHECK(dof_count(DofModel::Homography8) == 8);
}
