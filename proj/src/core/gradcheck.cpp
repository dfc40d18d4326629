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

#include "core/gradcheck.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "core/errors.hpp"

namespace atn {

GradCheckReport grad_check(const GradCheckFn& fn, std::vector<double> point,
                           double eps, std::span<const int64_t> coords) {
  std::vector<int64_t> all;
  if (coords.empty()) {
    all.resize(point.size());
    std::iota(all.begin(), all.end(), 0);
    coords = all;
  }
  const std::vector<double> analytic = fn.grad(point);
  GradCheckReport report;
  for (int64_t c : coords) {
    const double saved = point[size_t(c)];
    point[size_t(c)] = saved + eps;
    const double fp = fn.value(point);
    const uint64_t sig_p = fn.kink_signature ? fn.kink_signature(point) : 0;
    point[size_t(c)] = saved - eps;
    const double fm = fn.value(point);
    const uint64_t sig_m = fn.kink_signature ? fn.kink_signature(point) : 0;
    point[size_t(c)] = saved;
    if (!std::isfinite(fp) || !std::isfinite(fm))
      fail(ErrorCode::numeric,
           "non-finite value while probing coordinate " + std::to_string(c));
    if (fn.kink_signature && sig_p != sig_m) {
      ++report.skipped_kinks;
      continue;
    }
    const double numeric = (fp - fm) / (2.0 * eps);
    const double a = analytic[size_t(c)];
    const double denom = std::max(1e-8, std::fabs(a) + std::fabs(numeric));
    const double rel = std::fabs(a - numeric) / denom;
    ++report.checked;
    if (rel > report.max_rel_error) {
      report.max_rel_error = rel;
      report.worst_coord = c;
    }
  }
  return report;
}

}  // namespace atn
