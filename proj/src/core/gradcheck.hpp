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
#include <functional>
#include <span>
#include <vector>

namespace atn {

/// A scalar function with its analytic gradient. `kink_signature`, when
/// set, hashes which side of every non-smooth point (relu sign, pool
/// argmax, hinge activity) the evaluation landed on; a coordinate whose
/// +/-eps probes disagree sits on a kink and is skipped rather than
/// compared against a meaningless central difference.
struct GradCheckFn {
  std::function<double(std::span<const double>)> value;
  std::function<std::vector<double>(std::span<const double>)> grad;
  std::function<uint64_t(std::span<const double>)> kink_signature;
};

struct GradCheckReport {
  double max_rel_error = 0.0;
  int64_t worst_coord = -1;
  int checked = 0;
  int skipped_kinks = 0;
};

/// Central-difference check at `point`. `coords` selects the coordinates
/// to probe (empty checks all of them). Relative error per coordinate is
/// |analytic - numeric| / max(1e-8, |analytic| + |numeric|).
GradCheckReport grad_check(const GradCheckFn& fn, std::vector<double> point,
                           double eps,
                           std::span<const int64_t> coords = {});

}  // namespace atn
