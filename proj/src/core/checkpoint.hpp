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

#include <cstdint>
#include <string>
#include <vector>

#include "core/tensor.hpp"

namespace atn {

// Checkpoint container, little-endian throughout:
//   magic "ATN1" | u32 version | u32 len + config text | u64 seed |
//   u32 tensor count | per tensor: u32 name len, name bytes, u32 ndim,
//   u32 dims..., f32 payload.
// A save -> load -> save round trip is byte-identical.

inline constexpr uint32_t kCheckpointVersion = 1;

struct NamedTensor {
  std::string name;
  Tensor tensor;
};

struct CheckpointData {
  uint32_t version = kCheckpointVersion;
  std::string config_text;
  uint64_t seed = 0;
  std::vector<NamedTensor> tensors;
};

void write_checkpoint(const std::string& path, const CheckpointData& data);
CheckpointData read_checkpoint(const std::string& path);

}  // namespace atn
