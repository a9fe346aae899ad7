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

#include <complex>
#include <vector>

#include "ptrack/features.hpp"

namespace ptrack {

// Multi-channel discriminative correlation filter.
//
// A filter h (one real grid per feature channel) is the ridge-regression
// minimizer of || sum_l h^l (*) x^l - f ||^2 + lambda * sum_l ||h^l||^2,
// where (*) is circular convolution and f a Gaussian regression target.
// Per frequency bin the solution factors into a per-channel numerator and a
// shared real denominator:
//
//   N^l = F . conj(X^l)          D = sum_k X^k . conj(X^k)
//   response(z) = IDFT( sum_l N^l . Z^l / (D + lambda) )
//
// Both parts are updated over time as exponential moving averages, which is
// what the model below stores. Transforms always run at the native grid
// size; 1-D filters are the h == 1 case. The model is an immutable value:
// updates return a new model.
struct DcfModel {
  int w = 0, h = 0, d = 0;
  double lambda = 0.0;
  std::vector<std::vector<std::complex<double>>> num;  // d spectra
  std::vector<double> den;      // shared real spectrum, >= 0
  std::vector<std::complex<double>> label;  // DFT of the regression target

  bool valid() const { return w > 0 && h > 0 && d > 0; }
};

// Learns a fresh model from one sample. The label grid must match the
// sample's spatial shape; lambda must be non-negative.
DcfModel dcf_train_init(const FeatureMap& x, const Grid& label, double lambda);

// Blends a new sample into the model: numerator and denominator move by
// factor eta in (0, 1]. eta == 1 is equivalent to retraining from scratch.
DcfModel dcf_update(const DcfModel& m, const FeatureMap& x, double eta);

// Correlation response of the model on a query sample, same shape as the
// training grid. The peak location encodes the displacement of the target
// between model and query.
Grid dcf_respond(const DcfModel& m, const FeatureMap& z);

// Sub-bin peak location of a response grid.
struct PeakEstimate {
  double x = 0.0;   // signed shift in bins, wrapped to (-w/2, w/2]
  double y = 0.0;
  double value = 0.0;  // raw response at the integer peak
};

// Finds the response maximum (ties resolve to the lowest linear index) and
// refines each axis with a three-point parabola over circular neighbours.
// Indices wrap: a peak in the upper half of the grid is a negative shift.
PeakEstimate peak_locate(const Grid& response);

}  // namespace ptrack
