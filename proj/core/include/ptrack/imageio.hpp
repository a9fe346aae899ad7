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

#include <string>

#include "ptrack/geom.hpp"
#include "ptrack/image.hpp"

namespace ptrack {

// PNG/JPEG bridge. Color inputs are reduced with ITU-R 601 luma weights
// (0.299, 0.587, 0.114); 8-bit values map to [0, 1] by division by 255.
GrayImage load_gray(const std::string& path);

// Writes 8-bit grayscale; values are clamped to [0, 1] and rounded.
void save_gray(const GrayImage& img, const std::string& path);

// Diagnostic overlay: the frame with the quad outline burned in (bright
// with a dark halo so it reads on any background).
void save_overlay(const GrayImage& frame, const CornerQuad& quad,
                  const std::string& path);

}  // namespace ptrack
