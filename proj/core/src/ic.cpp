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

#include "ptrack/ic.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "ptrack/error.hpp"

namespace ptrack {

namespace {

// Keeps a composed warp inside its family: kills the numeric dust that
// accumulates off the constrained entries.
WarpMatrix normalize_group(const WarpMatrix& w, DofModel dof) {
  WarpMatrix r;
  switch (dof) {
    case DofModel::Translation2:
      r(0, 2) = w(0, 2);
      r(1, 2) = w(1, 2);
      return r;
    case DofModel::TransScale3: {
      const double s = 0.5 * (w(0, 0) + w(1, 1));
      r(0, 0) = r(1, 1) = s;
      r(0, 2) = w(0, 2);
      r(1, 2) = w(1, 2);
      return r;
    }
    case DofModel::Similarity4: {
      const double s = std::hypot(w(0, 0), w(1, 0));
      const double c = w(0, 0) / (s > 0 ? s : 1.0);
      const double sn = w(1, 0) / (s > 0 ? s : 1.0);
      r(0, 0) = s * c;
      r(0, 1) = -s * sn;
      r(1, 0) = s * sn;
      r(1, 1) = s * c;
      r(0, 2) = w(0, 2);
      r(1, 2) = w(1, 2);
      return r;
    }
    case DofModel::Affine6:
      r = w;
      r(2, 0) = r(2, 1) = 0.0;
      r(2, 2) = 1.0;
      return r;
    case DofModel::Homography8: {
      const double z = w(2, 2);
      if (std::abs(z) < 1e-12) throw Error("ic: degenerate homography");
      r = w;
      for (double& v : r.m) v /= z;
      return r;
    }
  }
  throw Error("ic: unknown warp family");
}

Point2 template_coord(int i, int j, int w, int h) {
  return {i + 0.5 - w / 2.0, j + 0.5 - h / 2.0};
}

// Indices of supported pixels plus the normalized template vector and the
// projected Jacobian shared by the score, gradient and refinement paths.
struct MaskedProblem {
  std::vector<size_t> idx;
  Eigen::VectorXd t_hat;   // zero-mean, unit-norm template values
  double t_norm = 0.0;
  Eigen::MatrixXd jac;     // npix x nparams, orthogonal to t_hat and to 1
};

MaskedProblem build_problem(const IcTemplate& tmpl, bool with_jacobian) {
  MaskedProblem p;
  const auto& mask = tmpl.support_mask();
  for (size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) p.idx.push_back(i);
  }
  const size_t n = p.idx.size();
  if (n == 0) return p;

  const auto& px = tmpl.pixels().data;
  p.t_hat.resize(Eigen::Index(n));
  double mean = 0.0;
  for (size_t i = 0; i < n; ++i) mean += px[p.idx[i]];
  mean /= double(n);
  for (size_t i = 0; i < n; ++i) p.t_hat[Eigen::Index(i)] = px[p.idx[i]] - mean;
  p.t_norm = p.t_hat.norm();
  if (p.t_norm > 0.0) p.t_hat /= p.t_norm;

  if (with_jacobian && p.t_norm > 0.0) {
    const int m = dof_count(tmpl.dof());
    p.jac.resize(Eigen::Index(n), m);
    for (int k = 0; k < m; ++k) {
      const auto sd = tmpl.steepest_descent(k);
      Eigen::VectorXd g(static_cast<Eigen::Index>(n));
      for (size_t i = 0; i < n; ++i) g[Eigen::Index(i)] = sd[p.idx[i]];
      g.array() -= g.mean();
      g -= (p.t_hat.dot(g)) * p.t_hat;
      p.jac.col(k) = g / p.t_norm;
    }
  }
  return p;
}

// Image values under the warp, as a zero-mean unit-norm vector; returns
// false for flat signals.
bool sample_normalized(const IcTemplate& tmpl, const GrayImage& img,
                       const WarpMatrix& warp, const MaskedProblem& p,
                       Eigen::VectorXd& out) {
  const int w = tmpl.width(), h = tmpl.height();
  const size_t n = p.idx.size();
  out.resize(Eigen::Index(n));
  for (size_t i = 0; i < n; ++i) {
    const size_t lin = p.idx[i];
    const Point2 tc = template_coord(int(lin % w), int(lin / w), w, h);
    const Point2 ic = apply(warp, tc);
    out[Eigen::Index(i)] = img.sample(ic.x, ic.y);
  }
  out.array() -= out.mean();
  const double nrm = out.norm();
  if (!(nrm > 1e-12)) return false;
  out /= nrm;
  return true;
}

}  // namespace

IcTemplate::IcTemplate(const GrayImage& pixels, DofModel dof)
    : pixels_(pixels), dof_(dof) {
  if (pixels_.empty()) throw Error("IcTemplate: empty template");
  mask_.assign(size_t(pixels_.width) * pixels_.height, 1);

  const auto [gx, gy] = gradient(pixels_);
  const int m = dof_count(dof_);
  sd_.assign(m, std::vector<double>(mask_.size(), 0.0));
  for (int j = 0; j < pixels_.height; ++j) {
    for (int i = 0; i < pixels_.width; ++i) {
      const size_t lin = size_t(j) * pixels_.width + i;
      const auto [x, y] = template_coord(i, j, pixels_.width, pixels_.height);
      const double dx = gx.data[lin], dy = gy.data[lin];
      sd_[0][lin] = dx;  // tx
      sd_[1][lin] = dy;  // ty
      switch (dof_) {
        case DofModel::Translation2:
          break;
        case DofModel::TransScale3:
          sd_[2][lin] = dx * x + dy * y;  // log-scale
          break;
        case DofModel::Similarity4:
          sd_[2][lin] = dx * x + dy * y;   // log-scale
          sd_[3][lin] = -dx * y + dy * x;  // rotation
          break;
        case DofModel::Affine6:
          sd_[2][lin] = dx * x;
          sd_[3][lin] = dx * y;
          sd_[4][lin] = dy * x;
          sd_[5][lin] = dy * y;
          break;
        case DofModel::Homography8:
          sd_[2][lin] = dx * x;
          sd_[3][lin] = dx * y;
          sd_[4][lin] = dy * x;
          sd_[5][lin] = dy * y;
          sd_[6][lin] = -x * (dx * x + dy * y);
          sd_[7][lin] = -y * (dx * x + dy * y);
          break;
      }
    }
  }
}

IcTemplate IcTemplate::with_support_mask(std::vector<uint8_t> mask) const {
  if (mask.size() != mask_.size()) {
    throw Error("IcTemplate: mask size mismatch");
  }
  IcTemplate t = *this;
  t.mask_ = std::move(mask);
  return t;
}

size_t IcTemplate::supported_pixels() const {
  size_t n = 0;
  for (uint8_t m : mask_) n += (m != 0);
  return n;
}

std::span<const double> IcTemplate::steepest_descent(int param) const {
  if (param < 0 || param >= int(sd_.size())) {
    throw Error("IcTemplate: parameter index out of range");
  }
  return sd_[size_t(param)];
}

WarpMatrix ic_delta_warp(DofModel dof, std::span<const double> delta) {
  if (int(delta.size()) != dof_count(dof)) {
    throw Error("ic_delta_warp: parameter count mismatch");
  }
  WarpMatrix w;
  w(0, 2) = delta[0];
  w(1, 2) = delta[1];
  switch (dof) {
    case DofModel::Translation2:
      break;
    case DofModel::TransScale3: {
      const double s = std::exp(delta[2]);
      w(0, 0) = w(1, 1) = s;
      break;
    }
    case DofModel::Similarity4: {
      const double s = std::exp(delta[2]);
      const double c = std::cos(delta[3]), sn = std::sin(delta[3]);
      w(0, 0) = s * c;
      w(0, 1) = -s * sn;
      w(1, 0) = s * sn;
      w(1, 1) = s * c;
      break;
    }
    case DofModel::Affine6:
      w(0, 0) = 1.0 + delta[2];
      w(0, 1) = delta[3];
      w(1, 0) = delta[4];
      w(1, 1) = 1.0 + delta[5];
      break;
    case DofModel::Homography8:
      w(0, 0) = 1.0 + delta[2];
      w(0, 1) = delta[3];
      w(1, 0) = delta[4];
      w(1, 1) = 1.0 + delta[5];
      w(2, 0) = delta[6];
      w(2, 1) = delta[7];
      break;
  }
  return w;
}

double ncc_score(const IcTemplate& tmpl, const GrayImage& img,
                 const WarpMatrix& warp) {
  if (img.empty()) throw Error("ncc_score: empty image");
  const MaskedProblem p = build_problem(tmpl, /*with_jacobian=*/false);
  if (p.idx.empty() || !(p.t_norm > 1e-12)) return 0.0;
  Eigen::VectorXd ihat;
  if (!sample_normalized(tmpl, img, warp, p, ihat)) return 0.0;
  return p.t_hat.dot(ihat);
}

std::vector<double> ic_gradient(const IcTemplate& tmpl, const GrayImage& img,
                                const WarpMatrix& warp) {
  if (img.empty()) throw Error("ic_gradient: empty image");
  const MaskedProblem p = build_problem(tmpl, /*with_jacobian=*/true);
  const int m = dof_count(tmpl.dof());
  if (p.idx.empty() || !(p.t_norm > 1e-12)) {
    return std::vector<double>(size_t(m), 0.0);
  }
  Eigen::VectorXd ihat;
  if (!sample_normalized(tmpl, img, warp, p, ihat)) {
    return std::vector<double>(size_t(m), 0.0);
  }
  const Eigen::VectorXd g = p.jac.transpose() * ihat;
  return std::vector<double>(g.data(), g.data() + m);
}

IcResult ic_refine(const IcTemplate& tmpl, const GrayImage& img,
                   const WarpMatrix& init, const IcConfig& cfg) {
  if (img.empty()) throw Error("ic_refine: empty image");
  const int m = dof_count(tmpl.dof());
  if (tmpl.supported_pixels() < size_t(2 * m)) {
    throw Error("ic_refine: too few supported pixels");
  }

  const MaskedProblem p = build_problem(tmpl, /*with_jacobian=*/true);
  WarpMatrix warp = normalize_group(init, tmpl.dof());

  if (!(p.t_norm > 1e-12)) {
    // Flat template: nothing to align against.
    return {warp, 0.0, 0};
  }

  Eigen::MatrixXd hess = p.jac.transpose() * p.jac;
  // Tiny Levenberg floor so rank-deficient masks yield finite (rejectable)
  // steps instead of NaN.
  hess.diagonal().array() += 1e-12 * (hess.trace() / m + 1.0);
  const Eigen::LDLT<Eigen::MatrixXd> solver(hess);

  Eigen::VectorXd ihat;
  double ncc = sample_normalized(tmpl, img, warp, p, ihat)
                   ? p.t_hat.dot(ihat)
                   : 0.0;
  if (!std::isfinite(ncc)) throw Error("ic_refine: non-finite score");

  int iters = 0;
  for (int it = 0; it < cfg.max_iters; ++it) {
    ++iters;
    const Eigen::VectorXd grad = p.jac.transpose() * ihat;
    Eigen::VectorXd delta = solver.solve(grad);
    if (!delta.allFinite()) break;

    // Backtrack on the step until the score improves.
    bool accepted = false;
    for (int h = 0; h <= cfg.max_halvings; ++h) {
      const WarpMatrix cand = normalize_group(
          compose(warp, invert(ic_delta_warp(
                      tmpl.dof(), std::span(delta.data(), size_t(m))))),
          tmpl.dof());
      Eigen::VectorXd cand_ihat;
      if (sample_normalized(tmpl, img, cand, p, cand_ihat)) {
        const double cand_ncc = p.t_hat.dot(cand_ihat);
        if (!std::isfinite(cand_ncc)) {
          throw Error("ic_refine: non-finite score");
        }
        if (cand_ncc >= ncc) {
          warp = cand;
          ncc = cand_ncc;
          ihat = std::move(cand_ihat);
          accepted = true;
          break;
        }
      }
      delta *= 0.5;
    }
    if (!accepted) break;               // local optimum under this model
    if (delta.norm() < cfg.epsilon) break;
  }
  return {warp, ncc, iters};
}

}  // namespace ptrack
