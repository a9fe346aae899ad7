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

#include <complex>
#include <vector>

#include "ptrack/dcf.hpp"
#include "ptrack/error.hpp"
#include "ptrack/features.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace ptrack;

namespace {

FeatureMap random_features(int w, int h, int d, uint64_t seed) {
  tt::Rng rng(seed);
  FeatureMap f(w, h, d);
  for (double& v : f.data) v = rng.uniform(-1.0, 1.0);
  return f;
}

FeatureMap circular_shift(const FeatureMap& x, int sx, int sy) {
  FeatureMap z(x.w, x.h, x.d);
  for (int l = 0; l < x.d; ++l) {
    for (int y = 0; y < x.h; ++y) {
      for (int xx = 0; xx < x.w; ++xx) {
        z.at(l, xx, y) =
            x.at(l, tt::wrap_index(xx - sx, x.w), tt::wrap_index(y - sy, x.h));
      }
    }
  }
  return z;
}

}  // namespace

TEST_CASE("filter response matches the dense spatial ridge solution") {
  // The trained model must reproduce, through its frequency-domain response,
  // the response of the filters obtained by solving the regression as an
  // explicit linear system and convolving directly.
  struct Shape {
    int w, h;
  };
  const Shape shapes[] = {{8, 8}, {21, 1}};
  const double lambdas[] = {0.0, 0.01, 1.0};
  uint64_t seed = 100;
  for (const Shape s : shapes) {
    const Grid label = gaussian_label(s.w, s.h, 1.5, 1.5);
    for (int d = 1; d <= 3; ++d) {
      for (const double lambda : lambdas) {
        CAPTURE(s.w);
        CAPTURE(d);
        CAPTURE(lambda);
        const FeatureMap x = random_features(s.w, s.h, d, seed++);
        const FeatureMap z = random_features(s.w, s.h, d, seed++);
        const DcfModel m = dcf_train_init(x, label, lambda);
        const Grid got = dcf_respond(m, z);

        const auto filters = tt::spatial_filters(x, label, lambda);
        const std::vector<double> want = tt::spatial_respond(filters, z);
        CHECK(tt::max_abs_diff(got.v, want) < 1e-9);
      }
    }
  }
}

TEST_CASE("response to a circular shift of the training sample is the "
          "shifted label") {
  // With lambda = 0 the response spectrum to a shifted copy reduces to the
  // label spectrum times a pure phase, so the response is the label moved
  // by exactly the shift.
  const FeatureMap x = random_features(16, 12, 2, 42);
  const Grid label = gaussian_label(16, 12, 2.0, 2.0);
  const DcfModel m = dcf_train_init(x, label, 0.0);

  const int sx = 3, sy = -2;
  const Grid resp = dcf_respond(m, circular_shift(x, sx, sy));
  for (int y = 0; y < 12; ++y) {
    for (int xx = 0; xx < 16; ++xx) {
      CHECK(resp.at(xx, y) ==
            doctest::Approx(label.at(tt::wrap_index(xx - sx, 16),
                                     tt::wrap_index(y - sy, 12)))
                .epsilon(1e-9));
    }
  }
  const PeakEstimate peak = peak_locate(resp);
  CHECK(peak.x == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(peak.y == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(peak.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("blend update unrolls to a weighted sum of single-sample models") {
  const int w = 10, h = 8, d = 2;
  const Grid label = gaussian_label(w, h, 1.2, 1.2);
  const double lambda = 0.01, eta = 0.3;
  const FeatureMap x0 = random_features(w, h, d, 1);
  const FeatureMap x1 = random_features(w, h, d, 2);
  const FeatureMap x2 = random_features(w, h, d, 3);

  DcfModel m = dcf_train_init(x0, label, lambda);
  m = dcf_update(m, x1, eta);
  m = dcf_update(m, x2, eta);

  const DcfModel m0 = dcf_train_init(x0, label, lambda);
  const DcfModel m1 = dcf_train_init(x1, label, lambda);
  const DcfModel m2 = dcf_train_init(x2, label, lambda);
  const double w0 = (1 - eta) * (1 - eta), w1 = (1 - eta) * eta, w2 = eta;

  for (int l = 0; l < d; ++l) {
    for (size_t i = 0; i < m.num[size_t(l)].size(); ++i) {
      const std::complex<double> want = w0 * m0.num[size_t(l)][i] +
                                        w1 * m1.num[size_t(l)][i] +
                                        w2 * m2.num[size_t(l)][i];
      CHECK(std::abs(m.num[size_t(l)][i] - want) < 1e-10);
    }
  }
  for (size_t i = 0; i < m.den.size(); ++i) {
    CHECK(m.den[i] ==
          doctest::Approx(w0 * m0.den[i] + w1 * m1.den[i] + w2 * m2.den[i])
              .epsilon(1e-10));
  }
}

TEST_CASE("update with full blend weight equals retraining") {
  const int w = 8, h = 8, d = 3;
  const Grid label = gaussian_label(w, h, 1.0, 1.0);
  const FeatureMap x0 = random_features(w, h, d, 5);
  const FeatureMap x1 = random_features(w, h, d, 6);

  const DcfModel updated = dcf_update(dcf_train_init(x0, label, 0.01), x1, 1.0);
  const DcfModel fresh = dcf_train_init(x1, label, 0.01);
  for (int l = 0; l < d; ++l) {
    for (size_t i = 0; i < updated.num[size_t(l)].size(); ++i) {
      CHECK(updated.num[size_t(l)][i].real() == fresh.num[size_t(l)][i].real());
      CHECK(updated.num[size_t(l)][i].imag() == fresh.num[size_t(l)][i].imag());
    }
  }
  for (size_t i = 0; i < updated.den.size(); ++i) {
    CHECK(updated.den[i] == fresh.den[i]);
  }
}

TEST_CASE("peak_locate parabola refinement") {
  // Exact three-point parabola: vertex offset 0.5 (a - c) / (a - 2b + c).
  Grid r(8, 1, 0.0);
  r.at(2, 0) = 0.5;   // a
  r.at(3, 0) = 1.0;   // b
  r.at(4, 0) = 0.7;   // c
  const PeakEstimate p = peak_locate(r);
  CHECK(p.x == doctest::Approx(3.0 + 0.5 * (0.5 - 0.7) / (0.5 - 2.0 + 0.7))
                   .epsilon(1e-12));
  CHECK(p.y == doctest::Approx(0.0));
  CHECK(p.value == doctest::Approx(1.0));
}

TEST_CASE("peak_locate wraps upper-half indices to negative shifts") {
  Grid r(8, 6, 0.0);
  r.at(6, 5) = 1.0;
  const PeakEstimate p = peak_locate(r);
  CHECK(p.x == doctest::Approx(-2.0));
  CHECK(p.y == doctest::Approx(-1.0));

  // half-size index stays positive
  Grid r2(8, 8, 0.0);
  r2.at(4, 4) = 1.0;
  const PeakEstimate p2 = peak_locate(r2);
  CHECK(p2.x == doctest::Approx(4.0));
  CHECK(p2.y == doctest::Approx(4.0));
}

TEST_CASE("peak_locate uses circular neighbours at the boundary") {
  Grid r(8, 1, 0.0);
  r.at(0, 0) = 1.0;
  r.at(7, 0) = 0.5;  // left neighbour via wrap
  r.at(1, 0) = 0.5;  // symmetric: no sub-bin correction
  const PeakEstimate p = peak_locate(r);
  CHECK(p.x == doctest::Approx(0.0).epsilon(1e-12));

  Grid r2(8, 1, 0.0);
  r2.at(0, 0) = 1.0;
  r2.at(7, 0) = 0.8;  // pulls the vertex across zero
  r2.at(1, 0) = 0.2;
  const PeakEstimate p2 = peak_locate(r2);
  CHECK(p2.x == doctest::Approx(0.5 * (0.8 - 0.2) / (0.8 - 2.0 + 0.2))
                    .epsilon(1e-12));
  CHECK(p2.x < 0.0);
}

TEST_CASE("peak_locate tie resolves to the lowest linear index") {
  Grid r(6, 6, 0.25);
  r.at(2, 1) = 1.0;
  r.at(4, 3) = 1.0;
  const PeakEstimate p = peak_locate(r);
  CHECK(p.x == doctest::Approx(2.0));
  CHECK(p.y == doctest::Approx(1.0));
}

TEST_CASE("invalid inputs are rejected") {
  const FeatureMap x = random_features(8, 8, 1, 9);
  const Grid label = gaussian_label(8, 8, 1.0, 1.0);
  const Grid bad_label = gaussian_label(8, 4, 1.0, 1.0);
  CHECK_THROWS_AS((void)dcf_train_init(x, bad_label, 0.01), Error);
  CHECK_THROWS_AS((void)dcf_train_init(x, label, -1.0), Error);

  const DcfModel m = dcf_train_init(x, label, 0.01);
  const FeatureMap wrong = random_features(8, 4, 1, 10);
  CHECK_THROWS_AS((void)dcf_update(m, wrong, 0.5), Error);
  CHECK_THROWS_AS((void)dcf_update(m, x, 0.0), Error);
  CHECK_THROWS_AS((void)dcf_update(m, x, 1.5), Error);
  CHECK_THROWS_AS((void)dcf_respond(m, wrong), Error);
  CHECK_THROWS_AS((void)peak_locate(Grid{}), Error);
}
