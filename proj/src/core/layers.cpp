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

#include "core/layers.hpp"

#include <sstream>

namespace atn {

LayerSpec LayerSpec::conv(int in_ch, int out_ch, int kernel, int stride,
                          int pad) {
  if (in_ch <= 0 || out_ch <= 0 || kernel <= 0 || stride <= 0 || pad < 0)
    fail(ErrorCode::config, "invalid conv2d sizes");
  LayerSpec s;
  s.kind = LayerKind::conv2d;
  s.in_ch = in_ch;
  s.out_ch = out_ch;
  s.kernel = kernel;
  s.stride = stride;
  s.pad = pad;
  return s;
}

LayerSpec LayerSpec::relu() {
  LayerSpec s;
  s.kind = LayerKind::relu;
  return s;
}

LayerSpec LayerSpec::maxpool2x2() {
  LayerSpec s;
  s.kind = LayerKind::maxpool2x2;
  return s;
}

LayerSpec LayerSpec::linear(int in_features, int out_features) {
  if (in_features <= 0 || out_features <= 0)
    fail(ErrorCode::config, "invalid linear sizes");
  LayerSpec s;
  s.kind = LayerKind::linear;
  s.in_features = in_features;
  s.out_features = out_features;
  return s;
}

std::string LayerSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case LayerKind::conv2d:
      os << "conv2d(" << in_ch << "->" << out_ch << ",k" << kernel << ",s"
         << stride << ",p" << pad << ")";
      break;
    case LayerKind::relu:
      os << "relu";
      break;
    case LayerKind::maxpool2x2:
      os << "maxpool2x2";
      break;
    case LayerKind::linear:
      os << "linear(" << in_features << "->" << out_features << ")";
      break;
  }
  return os.str();
}

std::string layer_name(const std::vector<LayerSpec>& layers, size_t index) {
  int nth = 0;
  const LayerKind kind = layers[index].kind;
  for (size_t i = 0; i <= index; ++i)
    if (layers[i].kind == kind) ++nth;
  switch (kind) {
    case LayerKind::conv2d:
      return "conv" + std::to_string(nth);
    case LayerKind::relu:
      return "relu" + std::to_string(nth);
    case LayerKind::maxpool2x2:
      return "pool" + std::to_string(nth);
    case LayerKind::linear:
      return "fc" + std::to_string(nth);
  }
  return "layer" + std::to_string(index);
}

std::vector<std::vector<int>> shape_pipeline(
    const std::vector<LayerSpec>& layers,
    const std::vector<int>& input_shape) {
  std::vector<std::vector<int>> shapes;
  shapes.push_back(input_shape);
  std::vector<int> cur = input_shape;
  for (size_t i = 0; i < layers.size(); ++i) {
    const LayerSpec& s = layers[i];
    const std::string name = layer_name(layers, i);
    switch (s.kind) {
      case LayerKind::conv2d: {
        if (cur.size() != 3 || cur[0] != s.in_ch)
          fail(ErrorCode::config,
               name + ": expected input [" + std::to_string(s.in_ch) +
                   ",H,W], got " + Tensor::shape_str(cur));
        const int oh = conv_out_dim(cur[1], s.kernel, s.stride, s.pad);
        const int ow = conv_out_dim(cur[2], s.kernel, s.stride, s.pad);
        if (oh <= 0 || ow <= 0)
          fail(ErrorCode::config, name + ": kernel larger than padded input " +
                                      Tensor::shape_str(cur));
        cur = {s.out_ch, oh, ow};
        break;
      }
      case LayerKind::relu:
        break;
      case LayerKind::maxpool2x2: {
        if (cur.size() != 3 || cur[1] % 2 != 0 || cur[2] % 2 != 0)
          fail(ErrorCode::config, name + ": input " + Tensor::shape_str(cur) +
                                      " is not even-sized [C,H,W]");
        cur = {cur[0], cur[1] / 2, cur[2] / 2};
        break;
      }
      case LayerKind::linear: {
        int64_t flat = 1;
        for (int d : cur) flat *= d;
        if (flat != s.in_features)
          fail(ErrorCode::config,
               name + ": expects " + std::to_string(s.in_features) +
                   " features, input " + Tensor::shape_str(cur) + " has " +
                   std::to_string(flat));
        cur = {s.out_features};
        break;
      }
    }
    shapes.push_back(cur);
  }
  return shapes;
}

}  // namespace atn
