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
#include <cstdint>
#include <string>
#include <vector>

#include "core/image.hpp"
#include "core/rng.hpp"

namespace atn {

/// Synthetic assembly scenes: a chassis plus one distinctive part glyph per
/// completed step, rendered into fixed non-overlapping slots with seeded
/// jitter. Step k shows parts 1..k, so later steps contain earlier ones.
struct SynthConfig {
  int steps = 8;
  int per_step = 40;
  int size = 64;
  uint64_t seed = 1;
};

struct SlotRect {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // half-open box
};

// Nominal slot box for a part (1-based). Jittered glyphs stay inside it.
SlotRect part_slot(const SynthConfig& cfg, int part);
std::array<float, 3> part_color(int part);

// Deterministic render of one scene. Part jitter derives from
// (image_seed, part), so rendering step k and k+1 with the same seed
// differs only inside slot k+1.
Image render_step_image(const SynthConfig& cfg, int step, uint64_t image_seed);

// Writes <root>/step_<n>/img_<i>.png for every step plus manifest.txt.
void generate_dataset(const SynthConfig& cfg, const std::string& root);

// One opaque constant-color rectangle covering an area fraction in
// [cover_lo, cover_hi]; stands in for a worker blocking the camera.
Image occlude_image(const Image& img, Rng& rng, double cover_lo,
                    double cover_hi);

// Occluded copy of a folder-per-step dataset (manifest not copied).
void occlude_dataset(const std::string& src_root, const std::string& dst_root,
                     uint64_t seed, double cover_lo, double cover_hi);

// Scripted frame sequence, e.g. "1x20,2x20,ox5,3x20": <step>x<count> for
// clean frames, ox<count> for heavily occluded frames of the current step.
// Writes <dir>/<%06d>.png plus manifest.csv (frame_id,step,occluded) and
// returns the frame count.
struct StreamScriptItem {
  int step = 1;
  int count = 0;
  bool occluded = false;
};

std::vector<StreamScriptItem> parse_stream_script(const std::string& script,
                                                  int max_step);
int64_t generate_stream(const SynthConfig& cfg, const std::string& script,
                        const std::string& dir, uint64_t seed,
                        double occ_lo = 0.55, double occ_hi = 0.85);

}  // namespace atn
