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

#include "ptrack/imageio.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <algorithm>
#include <cmath>

#include "ptrack/error.hpp"

namespace ptrack {

GrayImage load_gray(const std::string& path) {
  // IMREAD_GRAYSCALE applies the ITU-R 601 luma transform on color input.
  cv::Mat m = cv::imread(path, cv::IMREAD_GRAYSCALE);
  if (m.empty()) throw Error("load_gray: cannot read image: " + path);
  GrayImage img(m.cols, m.rows);
  for (int y = 0; y < m.rows; ++y) {
    const uint8_t* row = m.ptr<uint8_t>(y);
    for (int x = 0; x < m.cols; ++x) img.at(x, y) = row[x] / 255.0;
  }
  return img;
}

void save_gray(const GrayImage& img, const std::string& path) {
  if (img.empty()) throw Error("save_gray: empty image");
  cv::Mat m(img.height, img.width, CV_8UC1);
  for (int y = 0; y < img.height; ++y) {
    uint8_t* row = m.ptr<uint8_t>(y);
    for (int x = 0; x < img.width; ++x) {
      row[x] = uint8_t(std::lround(std::clamp(img.at(x, y), 0.0, 1.0) * 255.0));
    }
  }
  if (!cv::imwrite(path, m)) throw Error("save_gray: cannot write: " + path);
}

namespace {

void draw_line(cv::Mat& m, Point2 a, Point2 b, cv::Vec3b color) {
  const double len = std::max(1.0, norm(b - a));
  const int steps = int(std::ceil(len * 2));
  for (int i = 0; i <= steps; ++i) {
    const double t = double(i) / steps;
    const int x = int(std::lround(a.x + t * (b.x - a.x)));
    const int y = int(std::lround(a.y + t * (b.y - a.y)));
    if (x >= 0 && x < m.cols && y >= 0 && y < m.rows) {
      m.at<cv::Vec3b>(y, x) = color;
    }
  }
}

}  // namespace

void save_overlay(const GrayImage& frame, const CornerQuad& quad,
                  const std::string& path) {
  if (frame.empty()) throw Error("save_overlay: empty frame");
  cv::Mat m(frame.height, frame.width, CV_8UC3);
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      const uint8_t v =
          uint8_t(std::lround(std::clamp(frame.at(x, y), 0.0, 1.0) * 255.0));
      m.at<cv::Vec3b>(y, x) = {v, v, v};
    }
  }
  for (int i = 0; i < 4; ++i) {
    const Point2 a = quad.pts[i];
    const Point2 b = quad.pts[(i + 1) % 4];
    // Dark halo first, then the bright line one pixel tighter.
    draw_line(m, {a.x + 1, a.y + 1}, {b.x + 1, b.y + 1}, {32, 32, 32});
    draw_line(m, a, b, {64, 255, 64});
  }
  if (!cv::imwrite(path, m)) throw Error("save_overlay: cannot write: " + path);
}

}  // namespace ptrack
