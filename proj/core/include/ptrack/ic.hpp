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

#include <cstdint>
#include <span>
#include <vector>

#include "ptrack/geom.hpp"
#include "ptrack/image.hpp"

namespace ptrack {

// Inverse-compositional template alignment maximizing normalized cross
// correlation.
//
// The template lives on a fixed centered grid: pixel (i, j) of a w x h
// template has coordinates (i + 0.5 - w/2, j + 0.5 - h/2). A warp maps
// template coordinates to image coordinates. NCC is computed on zero-mean,
// unit-norm vectors over the supported pixels, which makes the score (and
// the whole iteration) invariant to affine intensity changes of the image.
//
// Each Gauss-Newton step solves for a small parameter perturbation applied
// to the template side and composes its inverse onto the current warp, so
// the per-parameter steepest-descent images are precomputed once per
// template. Steps that would lower the NCC are halved a few times and the
// iteration stops rather than accept a worse pose, so the final NCC never
// drops below the initial one.

struct IcConfig {
  int max_iters = 30;
  double epsilon = 1e-4;  // stop below this update norm (px / log / rad)
  int max_halvings = 5;
};

class IcTemplate {
 public:
  // Precomputes gradients and steepest-descent images for the warp family.
  // The support mask starts full; `mask` entries are nonzero for pixels
  // that participate in the alignment.
  IcTemplate(const GrayImage& pixels, DofModel dof);

  IcTemplate with_support_mask(std::vector<uint8_t> mask) const;

  const GrayImage& pixels() const { return pixels_; }
  const std::vector<uint8_t>& support_mask() const { return mask_; }
  DofModel dof() const { return dof_; }
  int width() const { return pixels_.width; }
  int height() const { return pixels_.height; }
  size_t supported_pixels() const;

  // Steepest-descent image for one warp parameter (row-major, full grid).
  std::span<const double> steepest_descent(int param) const;

 private:
  GrayImage pixels_;
  DofModel dof_;
  std::vector<uint8_t> mask_;
  std::vector<std::vector<double>> sd_;
};

struct IcResult {
  WarpMatrix warp;
  double ncc = 0.0;
  int iters = 0;
};

// Refines `init` against `img`. Throws Error when fewer than twice the
// parameter count of pixels are supported, or when the score turns
// non-finite (non-finite image data).
IcResult ic_refine(const IcTemplate& tmpl, const GrayImage& img,
                   const WarpMatrix& init, const IcConfig& cfg = {});

// NCC of the template against the image under a fixed warp; the quantity
// ic_refine maximizes. Flat (zero-variance) signals score 0.
double ncc_score(const IcTemplate& tmpl, const GrayImage& img,
                 const WarpMatrix& warp);

// Analytic gradient of the NCC objective with respect to the template-side
// parameter perturbation, evaluated at zero perturbation around `warp`.
// Matches central differences of ncc under ic_delta_warp perturbations.
std::vector<double> ic_gradient(const IcTemplate& tmpl, const GrayImage& img,
                                const WarpMatrix& warp);

// The warp family's perturbation parameterization: builds the warp matrix
// for a small parameter vector around identity. Parameter order matches
// ic_gradient: (tx, ty[, log-scale][, rotation-rad] | affine / projective
// entries row-major).
WarpMatrix ic_delta_warp(DofModel dof, std::span<const double> delta);

}  // namespace ptrack
