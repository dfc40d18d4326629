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

#include "core/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "core/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint writer assumes a little-endian host");

namespace atn {

namespace {

constexpr char kMagic[4] = {'A', 'T', 'N', '1'};

void put_u32(std::ostream& os, uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), 4);
}

void put_u64(std::ostream& os, uint64_t v) {
  os.write(reinterpret_cast<const char*>(&v), 8);
}

uint32_t get_u32(std::istream& is, const std::string& what) {
  uint32_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), 4))
    fail(ErrorCode::format, "checkpoint truncated while reading " + what);
  return v;
}

uint64_t get_u64(std::istream& is, const std::string& what) {
  uint64_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), 8))
    fail(ErrorCode::format, "checkpoint truncated while reading " + what);
  return v;
}

}  // namespace

void write_checkpoint(const std::string& path, const CheckpointData& data) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) fail(ErrorCode::io, "cannot open checkpoint for writing: " + path);
  os.write(kMagic, 4);
  put_u32(os, data.version);
  put_u32(os, uint32_t(data.config_text.size()));
  os.write(data.config_text.data(),
           std::streamsize(data.config_text.size()));
  put_u64(os, data.seed);
  put_u32(os, uint32_t(data.tensors.size()));
  for (const NamedTensor& nt : data.tensors) {
    put_u32(os, uint32_t(nt.name.size()));
    os.write(nt.name.data(), std::streamsize(nt.name.size()));
    put_u32(os, uint32_t(nt.tensor.shape.size()));
    for (int d : nt.tensor.shape) put_u32(os, uint32_t(d));
    os.write(reinterpret_cast<const char*>(nt.tensor.ptr()),
             std::streamsize(nt.tensor.size() * 4));
  }
  if (!os) fail(ErrorCode::io, "write failed: " + path);
}

CheckpointData read_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::io, "cannot open checkpoint: " + path);
  char magic[4] = {};
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    fail(ErrorCode::format, "bad magic in " + path + " (not a checkpoint)");
  CheckpointData data;
  data.version = get_u32(is, "version");
  if (data.version != kCheckpointVersion)
    fail(ErrorCode::format,
         "unsupported checkpoint version " + std::to_string(data.version) +
             " (expected " + std::to_string(kCheckpointVersion) + ")");
  const uint32_t cfg_len = get_u32(is, "config length");
  data.config_text.resize(cfg_len);
  if (cfg_len && !is.read(data.config_text.data(), cfg_len))
    fail(ErrorCode::format, "checkpoint truncated while reading config");
  data.seed = get_u64(is, "seed");
  const uint32_t count = get_u32(is, "tensor count");
  data.tensors.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    NamedTensor nt;
    const uint32_t name_len = get_u32(is, "tensor name length");
    nt.name.resize(name_len);
    if (name_len && !is.read(nt.name.data(), name_len))
      fail(ErrorCode::format, "checkpoint truncated while reading a name");
    const uint32_t ndim = get_u32(is, nt.name + " ndim");
    std::vector<int> shape(ndim);
    for (uint32_t d = 0; d < ndim; ++d)
      shape[d] = int(get_u32(is, nt.name + " dims"));
    nt.tensor = Tensor(shape);
    if (!is.read(reinterpret_cast<char*>(nt.tensor.ptr()),
                 std::streamsize(nt.tensor.size() * 4)))
      fail(ErrorCode::format,
           "checkpoint truncated in tensor payload: " + nt.name);
    data.tensors.push_back(std::move(nt));
  }
  return data;
}

}  // namespace atn
