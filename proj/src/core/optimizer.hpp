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

#include "core/model.hpp"

namespace atn {

struct SgdConfig {
  double lr = 0.01;
  double momentum = 0.9;
};

// buf <- momentum * buf + grad; value <- value - lr * buf; grads zeroed.
template <typename T>
void sgd_step(std::vector<ParameterT<T>>& params, const SgdConfig& cfg) {
  for (auto& p : params) {
    if (!p.grad.all_finite())
      fail(ErrorCode::numeric, "non-finite gradient in " + p.name);
    const T lr = static_cast<T>(cfg.lr);
    const T mu = static_cast<T>(cfg.momentum);
    const int64_t n = p.value.size();
    for (int64_t i = 0; i < n; ++i) {
      p.momentum.data[i] = mu * p.momentum.data[i] + p.grad.data[i];
      p.value.data[i] -= lr * p.momentum.data[i];
      p.grad.data[i] = T(0);
    }
  }
}

}  // namespace atn
