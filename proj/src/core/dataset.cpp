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

#include "core/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <map>

#include "core/errors.hpp"

namespace fs = std::filesystem;

namespace atn {

Dataset::Dataset(int steps, std::vector<LabeledImage> images)
    : steps_(steps), images_(std::move(images)) {
  if (steps_ < 1) fail(ErrorCode::config, "dataset needs at least one step");
  std::stable_sort(images_.begin(), images_.end(),
                   [](const LabeledImage& a, const LabeledImage& b) {
                     return a.step != b.step ? a.step < b.step
                                             : a.source_id < b.source_id;
                   });
  offsets_.assign(size_t(steps_) + 1, 0);
  for (const auto& img : images_) {
    if (img.step < 1 || img.step > steps_)
      fail(ErrorCode::config,
           "image step out of range: " + img.source_id);
    ++offsets_[size_t(img.step)];
  }
  for (int s = 1; s <= steps_; ++s) offsets_[size_t(s)] += offsets_[size_t(s) - 1];
}

std::span<const LabeledImage> Dataset::of_step(int step) const {
  if (step < 1 || step > steps_)
    fail(ErrorCode::config, "step out of range");
  const auto lo = size_t(offsets_[size_t(step) - 1]);
  const auto hi = size_t(offsets_[size_t(step)]);
  return {images_.data() + lo, hi - lo};
}

int64_t Dataset::first_of_step(int step) const {
  return offsets_[size_t(step) - 1];
}

Dataset load_dataset(const std::string& root) {
  if (!fs::is_directory(root))
    fail(ErrorCode::io, "dataset root not found: " + root);
  std::map<int, fs::path> step_dirs;
  for (const auto& e : fs::directory_iterator(root)) {
    if (!e.is_directory()) continue;
    const std::string name = e.path().filename().string();
    if (!name.starts_with("step_")) continue;
    try {
      step_dirs[std::stoi(name.substr(5))] = e.path();
    } catch (const std::exception&) {
      fail(ErrorCode::format, "unparsable step folder name: " + name);
    }
  }
  if (step_dirs.empty())
    fail(ErrorCode::format, "no step_<n> folders under " + root);
  int expected = 1;
  for (const auto& [step, _] : step_dirs) {
    if (step != expected)
      fail(ErrorCode::format,
           "non-contiguous steps: expected step_" + std::to_string(expected) +
               ", found step_" + std::to_string(step));
    ++expected;
  }

  std::vector<LabeledImage> images;
  for (const auto& [step, dir] : step_dirs) {
    std::vector<fs::path> files;
    for (const auto& f : fs::directory_iterator(dir))
      if (f.is_regular_file() && f.path().extension() == ".png")
        files.push_back(f.path());
    if (files.empty())
      fail(ErrorCode::format, "empty step folder: step_" + std::to_string(step));
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      LabeledImage li;
      li.image = read_png(f.string());
      li.step = step;
      li.source_id = dir.filename().string() + "/" + f.filename().string();
      images.push_back(std::move(li));
    }
  }
  return Dataset(int(step_dirs.size()), std::move(images));
}

}  // namespace atn
