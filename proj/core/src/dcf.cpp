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

#include "ptrack/dcf.hpp"

#include <cmath>

#include "fft.hpp"
#include "ptrack/error.hpp"

namespace ptrack {

namespace {

void check_sample(const FeatureMap& x) {
  if (x.w < 1 || x.h < 1 || x.d < 1) throw Error("dcf: empty sample");
}

// Per-channel spectra plus the accumulated |X|^2 term.
struct SampleSpectra {
  std::vector<std::vector<std::complex<double>>> chan;
  std::vector<double> power;
};

SampleSpectra transform_sample(const FeatureMap& x) {
  SampleSpectra s;
  s.chan.reserve(x.d);
  s.power.assign(size_t(x.w) * x.h, 0.0);
  for (int l = 0; l < x.d; ++l) {
    auto spec = detail::dft2(x.channel(l), x.w, x.h);
    for (size_t i = 0; i < spec.size(); ++i) s.power[i] += std::norm(spec[i]);
    s.chan.push_back(std::move(spec));
  }
  return s;
}

}  // namespace

DcfModel dcf_train_init(const FeatureMap& x, const Grid& label, double lambda) {
  check_sample(x);
  if (label.w != x.w || label.h != x.h) {
    throw Error("dcf_train_init: label shape mismatch");
  }
  if (lambda < 0.0) throw Error("dcf_train_init: negative lambda");

  DcfModel m;
  m.w = x.w;
  m.h = x.h;
  m.d = x.d;
  m.lambda = lambda;
  m.label = detail::dft2(label.v.data(), label.w, label.h);

  SampleSpectra s = transform_sample(x);
  m.den = std::move(s.power);
  m.num.resize(x.d);
  for (int l = 0; l < x.d; ++l) {
    auto& n = m.num[l];
    n.resize(m.label.size());
    for (size_t i = 0; i < n.size(); ++i) {
      n[i] = m.label[i] * std::conj(s.chan[l][i]);
    }
  }
  return m;
}

DcfModel dcf_update(const DcfModel& m, const FeatureMap& x, double eta) {
  if (!m.valid()) throw Error("dcf_update: invalid model");
  if (x.w != m.w || x.h != m.h || x.d != m.d) {
    throw Error("dcf_update: sample shape mismatch");
  }
  if (!(eta > 0.0) || eta > 1.0) throw Error("dcf_update: eta outside (0, 1]");

  SampleSpectra s = transform_sample(x);
  DcfModel out = m;
  const double keep = 1.0 - eta;
  for (size_t i = 0; i < out.den.size(); ++i) {
    out.den[i] = keep * m.den[i] + eta * s.power[i];
  }
  for (int l = 0; l < m.d; ++l) {
    auto& n = out.num[l];
    for (size_t i = 0; i < n.size(); ++i) {
      n[i] = keep * m.num[l][i] + eta * (m.label[i] * std::conj(s.chan[l][i]));
    }
  }
  return out;
}

Grid dcf_respond(const DcfModel& m, const FeatureMap& z) {
  if (!m.valid()) throw Error("dcf_respond: invalid model");
  if (z.w != m.w || z.h != m.h || z.d != m.d) {
    throw Error("dcf_respond: query shape mismatch");
  }

  std::vector<std::complex<double>> acc(size_t(m.w) * m.h, {0.0, 0.0});
  for (int l = 0; l < m.d; ++l) {
    auto spec = detail::dft2(z.channel(l), m.w, m.h);
    const auto& n = m.num[l];
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += n[i] * spec[i];
  }
  for (size_t i = 0; i < acc.size(); ++i) acc[i] /= (m.den[i] + m.lambda);

  Grid r(m.w, m.h);
  r.v = detail::idft2_real(acc.data(), m.w, m.h);
  return r;
}

namespace {

// Quadratic sub-bin offset from three samples around a peak; zero when the
// neighbourhood is flat.
double parabola_offset(double left, double peak, double right) {
  const double denom = left - 2.0 * peak + right;
  if (denom >= 0.0 || !std::isfinite(denom)) return 0.0;  // flat or invalid
  return (left - right) / (2.0 * denom);
}

double wrap_shift(int idx, int n) {
  return (idx <= n / 2) ? double(idx) : double(idx - n);
}

}  // namespace

PeakEstimate peak_locate(const Grid& response) {
  if (response.w < 1 || response.h < 1 || response.v.empty()) {
    throw Error("peak_locate: empty response");
  }
  size_t best = 0;
  for (size_t i = 1; i < response.v.size(); ++i) {
    if (response.v[i] > response.v[best]) best = i;
  }
  const int px = int(best % response.w);
  const int py = int(best / response.w);

  auto at_wrapped = [&](int x, int y) {
    x = (x % response.w + response.w) % response.w;
    y = (y % response.h + response.h) % response.h;
    return response.at(x, y);
  };

  PeakEstimate e;
  e.value = response.at(px, py);
  double ox = 0.0, oy = 0.0;
  if (response.w > 1) {
    ox = parabola_offset(at_wrapped(px - 1, py), e.value, at_wrapped(px + 1, py));
  }
  if (response.h > 1) {
    oy = parabola_offset(at_wrapped(px, py - 1), e.value, at_wrapped(px, py + 1));
  }
  e.x = wrap_shift(px, response.w) + ox;
  e.y = wrap_shift(py, response.h) + oy;
  return e;
}

}  // namespace ptrack
