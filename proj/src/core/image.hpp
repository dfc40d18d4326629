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

#include <string>
#include <vector>

#include "core/tensor.hpp"

namespace atn {

/// RGB image, interleaved HWC floats in [0, 1].
struct Image {
  int h = 0, w = 0;
  static constexpr int channels = 3;
  std::vector<float> px;

  Image() = default;
  Image(int height, int width) : h(height), w(width) {
    px.assign(size_t(h) * w * channels, 0.f);
  }

  float& at(int y, int x, int c) {
    return px[(size_t(y) * w + x) * channels + c];
  }
  float at(int y, int x, int c) const {
    return px[(size_t(y) * w + x) * channels + c];
  }

  void clamp01() {
    for (float& v : px) v = v < 0.f ? 0.f : (v > 1.f ? 1.f : v);
  }
};

// [C,H,W] tensor view of an image, the embedder's input layout.
Tensor to_tensor(const Image& img);
Image from_tensor(const Tensor& t);

// 8-bit RGB PNG io; floats are quantized with round(v * 255) on write and
// divided by 255 on read.
void write_png(const std::string& path, const Image& img);
Image read_png(const std::string& path);

}  // namespace atn
