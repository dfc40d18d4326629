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

#include <vector>

#include "core/image.hpp"
#include "core/rng.hpp"

namespace atn {

/// Random Erasing: overwrites `repeats` independent rectangles with random
/// pixel values. Every placed rectangle's integer area fraction stays in
/// [area_lo, area_hi] and its h/w aspect in [aspect_lo, aspect_hi];
/// parameters are resampled up to 100 times when rounding pushes a draw
/// outside the ranges.
struct EraseParams {
  double area_lo = 0.3;
  double area_hi = 0.5;
  double aspect_lo = 0.3;
  double aspect_hi = 3.3;
  int repeats = 2;
};

struct EraseRect {
  int x = 0, y = 0, w = 0, h = 0;
};

void validate(const EraseParams& p);

Image random_erase(const Image& img, const EraseParams& p, Rng& rng,
                   std::vector<EraseRect>* applied = nullptr);

}  // namespace atn
