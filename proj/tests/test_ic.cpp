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
#include "ptrack/ic.hpp"
#include "ptrack/image.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace ptrack;

namespace {

// Smooth analytic texture; template and image are both sampled from it so
// the two are exactly aligned under the generating warp at pixel centers.
double analytic(double x, double y) {
  return 0.5 + 0.18 * std::sin(0.55 * x + 1.3) * std::cos(0.45 * y - 0.7) +
         0.12 * std::sin(0.23 * x - 0.4) * std::sin(0.31 * y + 0.9) +
         0.08 * std::cos(0.12 * (x + 0.7 * y));
}

GrayImage analytic_template(int w, int h) {
  GrayImage t(w, h);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      t.at(i, j) = analytic(i + 0.5 - w / 2.0, j + 0.5 - h / 2.0);
    }
  }
  return t;
}

GrayImage analytic_image(int w, int h, const WarpMatrix& warp) {
  const WarpMatrix inv = invert(warp);
  GrayImage img(w, h);
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      const Point2 t = apply(inv, {u + 0.5, v + 0.5});
      img.at(u, v) = analytic(t.x, t.y);
    }
  }
  return img;
}

double corner_error(const WarpMatrix& got, const WarpMatrix& want, int w,
                    int h) {
  const CornerQuad box = make_rect(-w / 2.0, -h / 2.0, w, h);
  return tt::quad_max_corner_dist(apply_warp(got, box),
                                  apply_warp(want, box));
}

const DofModel kFamilies[] = {DofModel::Translation2, DofModel::TransScale3,
                              DofModel::Similarity4, DofModel::Affine6,
                              DofModel::Homography8};

}  // namespace

TEST_CASE("delta warp parameterization") {
  const double d2[] = {1.5, -2.0};
  const WarpMatrix t2 = ic_delta_warp(DofModel::Translation2, d2);
  CHECK(t2(0, 2) == 1.5);
  CHECK(t2(1, 2) == -2.0);
  CHECK(t2(0, 0) == 1.0);

  const double d3[] = {0.0, 0.0, 0.1};
  const WarpMatrix t3 = ic_delta_warp(DofModel::TransScale3, d3);
  CHECK(t3(0, 0) == doctest::Approx(std::exp(0.1)));
  CHECK(t3(1, 1) == doctest::Approx(std::exp(0.1)));
  CHECK(t3(0, 1) == 0.0);

  const double d4[] = {0.0, 0.0, 0.0, 0.2};
  const WarpMatrix t4 = ic_delta_warp(DofModel::Similarity4, d4);
  CHECK(t4(0, 0) == doctest::Approx(std::cos(0.2)));
  CHECK(t4(1, 0) == doctest::Approx(std::sin(0.2)));
  CHECK(t4(0, 1) == doctest::Approx(-std::sin(0.2)));

  const double d6[] = {0.0, 0.0, 0.01, 0.02, 0.03, 0.04};
  const WarpMatrix t6 = ic_delta_warp(DofModel::Affine6, d6);
  CHECK(t6(0, 0) == doctest::Approx(1.01));
  CHECK(t6(0, 1) == doctest::Approx(0.02));
  CHECK(t6(1, 0) == doctest::Approx(0.03));
  CHECK(t6(1, 1) == doctest::Approx(1.04));

  const double d8[] = {0, 0, 0, 0, 0, 0, 1e-3, -2e-3};
  const WarpMatrix t8 = ic_delta_warp(DofModel::Homography8, d8);
  CHECK(t8(2, 0) == doctest::Approx(1e-3));
  CHECK(t8(2, 1) == doctest::Approx(-2e-3));
  CHECK(t8(2, 2) == 1.0);

  const double wrong[] = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS((void)ic_delta_warp(DofModel::Similarity4, wrong), Error);
}

TEST_CASE("score is 1 for a perfectly aligned template") {
  const GrayImage t = analytic_template(20, 16);
  const IcTemplate tmpl(t, DofModel::Similarity4);
  // image is the template itself; centered coords map by a half-size shift
  const WarpMatrix w = params_to_matrix({10.0, 8.0, 1.0, 0.0});
  CHECK(ncc_score(tmpl, t, w) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("analytic gradient matches difference quotients, all families") {
  const int tw = 24, th = 20;
  const GrayImage tpix = analytic_template(tw, th);
  const WarpMatrix truth = params_to_matrix({44.0, 37.0, 1.1, 6.0});
  const GrayImage img = analytic_image(96, 80, truth);

  // evaluate away from the optimum so every component is informative
  const WarpMatrix off =
      compose(truth, params_to_matrix({0.8, -0.6, 1.02, 1.5}));

  for (const DofModel dof : kFamilies) {
    CAPTURE(dof_count(dof));
    const IcTemplate tmpl(tpix, dof);
    const std::vector<double> got = ic_gradient(tmpl, img, off);
    const int m = dof_count(dof);
    REQUIRE(int(got.size()) == m);

    std::vector<double> want(static_cast<size_t>(m));
    double scale = 0.0;
    for (int k = 0; k < m; ++k) {
      want[size_t(k)] = tt::fd_ncc_gradient(tmpl, img, off, k);
      scale = std::max(scale, std::abs(want[size_t(k)]));
    }
    REQUIRE(scale > 1e-3);  // the probe pose must actually excite the score
    for (int k = 0; k < m; ++k) {
      CAPTURE(k);
      CHECK(std::abs(got[size_t(k)] - want[size_t(k)]) <=
            1e-3 * std::max(scale, 1e-2));
    }
  }
}

TEST_CASE("refinement recovers the generating warp") {
  const int tw = 26, th = 22;
  const GrayImage tpix = analytic_template(tw, th);

  SUBCASE("translation") {
    const WarpMatrix truth = params_to_matrix({47.3, 39.6, 1.0, 0.0});
    const GrayImage img = analytic_image(96, 80, truth);
    const IcTemplate tmpl(tpix, DofModel::Translation2);
    WarpMatrix init = truth;
    init(0, 2) += 1.3;
    init(1, 2) -= 0.8;
    const IcResult r = ic_refine(tmpl, img, init);
    CHECK(corner_error(r.warp, truth, tw, th) < 0.05);
    CHECK(r.ncc > 0.995);
    CHECK(r.iters >= 1);
  }

  SUBCASE("translation and scale") {
    const WarpMatrix truth = params_to_matrix({48.0, 40.0, 1.12, 0.0});
    const GrayImage img = analytic_image(96, 80, truth);
    const IcTemplate tmpl(tpix, DofModel::TransScale3);
    const WarpMatrix init =
        compose(truth, params_to_matrix({1.0, -0.7, 1.05, 0.0}));
    const IcResult r = ic_refine(tmpl, img, init);
    CHECK(corner_error(r.warp, truth, tw, th) < 0.05);
    CHECK(r.ncc > 0.995);
  }

  SUBCASE("similarity") {
    const WarpMatrix truth = params_to_matrix({46.2, 41.5, 1.15, 8.0});
    const GrayImage img = analytic_image(96, 80, truth);
    const IcTemplate tmpl(tpix, DofModel::Similarity4);
    const WarpMatrix init =
        compose(truth, params_to_matrix({1.5, -1.0, 1.04, 2.5}));
    const IcResult r = ic_refine(tmpl, img, init);
    CHECK(corner_error(r.warp, truth, tw, th) < 0.05);
    CHECK(r.ncc > 0.995);
  }

  SUBCASE("affine") {
    WarpMatrix truth;
    truth(0, 0) = 1.08;
    truth(0, 1) = 0.06;
    truth(1, 0) = -0.04;
    truth(1, 1) = 0.94;
    truth(0, 2) = 48.5;
    truth(1, 2) = 40.2;
    const GrayImage img = analytic_image(96, 80, truth);
    const IcTemplate tmpl(tpix, DofModel::Affine6);
    WarpMatrix init = truth;
    init(0, 2) += 1.2;
    init(1, 2) -= 0.9;
    init(0, 0) += 0.02;
    init(1, 1) -= 0.02;
    const IcResult r = ic_refine(tmpl, img, init);
    CHECK(corner_error(r.warp, truth, tw, th) < 0.1);
    CHECK(r.ncc > 0.995);
  }

  SUBCASE("homography") {
    WarpMatrix truth;
    truth(0, 0) = 1.05;
    truth(0, 1) = 0.04;
    truth(1, 0) = -0.03;
    truth(1, 1) = 0.97;
    truth(0, 2) = 48.0;
    truth(1, 2) = 40.0;
    truth(2, 0) = 8e-4;
    truth(2, 1) = -6e-4;
    const GrayImage img = analytic_image(96, 80, truth);
    const IcTemplate tmpl(tpix, DofModel::Homography8);
    WarpMatrix init = truth;
    init(0, 2) += 0.8;
    init(1, 2) += 0.6;
    init(2, 0) = 0.0;
    init(2, 1) = 0.0;
    const IcResult r = ic_refine(tmpl, img, init);
    CHECK(corner_error(r.warp, truth, tw, th) < 0.2);
    CHECK(r.ncc > 0.99);
  }
}

TEST_CASE("refinement never lowers the score") {
  const int tw = 24, th = 24;
  const GrayImage tpix = analytic_template(tw, th);
  const WarpMatrix truth = params_to_matrix({40.0, 36.0, 1.0, 0.0});
  const GrayImage img = analytic_image(80, 72, truth);
  const IcTemplate tmpl(tpix, DofModel::Similarity4);

  tt::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const WarpMatrix init = compose(
        truth, params_to_matrix({rng.uniform(-3, 3), rng.uniform(-3, 3),
                                 std::exp(rng.uniform(-0.1, 0.1)),
                                 rng.uniform(-6, 6)}));
    const double before = ncc_score(tmpl, img, init);
    const IcResult r = ic_refine(tmpl, img, init);
    CHECK(r.ncc >= before - 1e-12);
  }
}

TEST_CASE("score and refinement ignore affine intensity changes") {
  const int tw = 24, th = 20;
  const GrayImage tpix = analytic_template(tw, th);
  const WarpMatrix truth = params_to_matrix({44.0, 37.0, 1.08, 5.0});
  const GrayImage img = analytic_image(96, 80, truth);
  GrayImage remapped = img;
  for (double& v : remapped.data) v = 0.6 * v + 0.25;

  const IcTemplate tmpl(tpix, DofModel::Similarity4);
  const WarpMatrix probe =
      compose(truth, params_to_matrix({0.7, -0.5, 1.02, 1.0}));
  CHECK(std::abs(ncc_score(tmpl, img, probe) -
                 ncc_score(tmpl, remapped, probe)) < 1e-10);

  const IcResult a = ic_refine(tmpl, img, probe);
  const IcResult b = ic_refine(tmpl, remapped, probe);
  CHECK(std::abs(a.ncc - b.ncc) < 1e-9);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      CHECK(a.warp(r, c) == doctest::Approx(b.warp(r, c)).epsilon(1e-8));
    }
  }
}

TEST_CASE("support mask restricts the alignment") {
  const int tw = 24, th = 20;
  const GrayImage tpix = analytic_template(tw, th);
  const IcTemplate full(tpix, DofModel::Translation2);

  std::vector<uint8_t> half(size_t(tw) * th, 0);
  for (int j = 0; j < th; ++j) {
    for (int i = 0; i < tw / 2; ++i) half[size_t(j) * tw + i] = 1;
  }
  const IcTemplate masked = full.with_support_mask(half);
  CHECK(masked.supported_pixels() == size_t(tw / 2) * th);
  CHECK(full.supported_pixels() == size_t(tw) * th);

  const WarpMatrix truth = params_to_matrix({40.0, 36.0, 1.0, 0.0});
  const GrayImage img = analytic_image(80, 72, truth);
  WarpMatrix init = truth;
  init(0, 2) += 1.0;
  init(1, 2) -= 0.7;
  const IcResult r = ic_refine(masked, img, init);
  CHECK(corner_error(r.warp, truth, tw, th) < 0.05);

  // too few pixels for the parameter count
  std::vector<uint8_t> three(size_t(tw) * th, 0);
  three[0] = three[1] = three[2] = 1;
  CHECK_THROWS_AS((void)ic_refine(full.with_support_mask(three), img, init),
                  Error);
  // mask of the wrong size
  CHECK_THROWS_AS((void)full.with_support_mask(std::vector<uint8_t>(5, 1)),
                  Error);
}

TEST_CASE("flat template scores zero and refines to the input warp") {
  const GrayImage flat(20, 20, 0.5);
  const IcTemplate tmpl(flat, DofModel::Similarity4);
  const GrayImage img = tt::textured(64, 64, 33);
  const WarpMatrix init = params_to_matrix({32.0, 32.0, 1.0, 0.0});
  CHECK(ncc_score(tmpl, img, init) == 0.0);
  const IcResult r = ic_refine(tmpl, img, init);
  CHECK(r.ncc == 0.0);
  CHECK(r.iters == 0);
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      CHECK(r.warp(row, col) == doctest::Approx(init(row, col)));
    }
  }
}

TEST_CASE("steepest descent image accessor bounds") {
  const IcTemplate tmpl(analytic_template(16, 16), DofModel::TransScale3);
  CHECK(tmpl.steepest_descent(2).size() == 256);
  CHECK_THROWS_AS((void)tmpl.steepest_descent(3), Error);
  CHECK_THROWS_AS((void)tmpl.steepest_descent(-1), Error);
}
