// Copyright (c) 2026 atn contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "core/image.hpp"
#include "core/rng.hpp"

namespace atn {

/// Training-time augmentations: rotation, projective warp, color change
/// and partial edge truncation, each applied independently with
/// probability `prob`. Output size and [0,1] range are preserved; with
/// prob == 0 the input is returned unchanged.
struct AugmentConfig {
  double rotation_deg = 10.0;
  double projective_frac = 0.05;   // corner jitter as a fraction of the side
  double color_gain_lo = 0.8;
  double color_gain_hi = 1.2;
  double color_offset = 0.05;
  double truncation_frac = 0.15;   // max strip depth from one edge
  double prob = 0.5;
};

Image augment(const Image& img, const AugmentConfig& cfg, Rng& rng);

// Component transforms, exposed for direct use in tests.
Image rotate_image(const Image& img, double degrees);
Image warp_corners(const Image& img, const std::array<double, 8>& corner_px);
Image truncate_edge(const Image& img, int edge, double frac);

// Row-major 3x3 homography mapping the unit square to the given corners
// (tl, tr, br, bl as x,y pairs).
std::array<double, 9> homography_from_unit_square(
    const std::array<double, 8>& corners);

}  // namespace atn
