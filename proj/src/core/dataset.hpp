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

#include <span>
#include <string>
#include <vector>

#include "core/image.hpp"

namespace atn {

struct LabeledImage {
  Image image;
  int step = 0;               // 1-based
  std::string source_id;      // "step_<n>/<file>"
};

/// In-memory dataset grouped by step. Images are stored sorted by
/// (step, filename); `range(step)` indexes into that ordering.
class Dataset {
 public:
  Dataset(int steps, std::vector<LabeledImage> images);

  int steps() const { return steps_; }
  int64_t size() const { return int64_t(images_.size()); }
  const LabeledImage& operator[](int64_t i) const { return images_[size_t(i)]; }
  std::span<const LabeledImage> all() const { return images_; }
  std::span<const LabeledImage> of_step(int step) const;
  int64_t first_of_step(int step) const;

 private:
  int steps_;
  std::vector<LabeledImage> images_;
  std::vector<int64_t> offsets_;  // steps_+1 entries
};

// Reads <root>/step_<n>/*.png. Steps must be contiguous from 1 and every
// step folder must hold at least one readable PNG.
Dataset load_dataset(const std::string& root);

}  // namespace atn
