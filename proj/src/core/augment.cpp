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

#include "core/augment.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace atn {

namespace {

// bilinear sample with clamp-to-edge coordinates
float sample(const Image& img, float x, float y, int c) {
  x = std::clamp(x, 0.f, float(img.w - 1));
  y = std::clamp(y, 0.f, float(img.h - 1));
  const int x0 = int(x), y0 = int(y);
  const int x1 = std::min(x0 + 1, img.w - 1);
  const int y1 = std::min(y0 + 1, img.h - 1);
  const float fx = x - float(x0), fy = y - float(y0);
  const float top = img.at(y0, x0, c) * (1.f - fx) + img.at(y0, x1, c) * fx;
  const float bot = img.at(y1, x0, c) * (1.f - fx) + img.at(y1, x1, c) * fx;
  return top * (1.f - fy) + bot * fy;
}

std::array<double, 9> invert3(const std::array<double, 9>& m) {
  const double a = m[0], b = m[1], c = m[2], d = m[3], e = m[4], f = m[5],
               g = m[6], h = m[7], i = m[8];
  const double det = a * (e * i - f * h) - b * (d * i - f * g) +
                     c * (d * h - e * g);
  if (std::fabs(det) < 1e-12)
    fail(ErrorCode::geometry, "degenerate homography");
  const double s = 1.0 / det;
  return {(e * i - f * h) * s, (c * h - b * i) * s, (b * f - c * e) * s,
          (f * g - d * i) * s, (a * i - c * g) * s, (c * d - a * f) * s,
          (d * h - e * g) * s, (b * g - a * h) * s, (a * e - b * d) * s};
}

Image apply_homography(const Image& img, const std::array<double, 9>& fwd) {
  const auto inv = invert3(fwd);
  Image out(img.h, img.w);
  for (int y = 0; y < img.h; ++y) {
    for (int x = 0; x < img.w; ++x) {
      const double xs = x + 0.5, ys = y + 0.5;
      const double wz = inv[6] * xs + inv[7] * ys + inv[8];
      const double sx = (inv[0] * xs + inv[1] * ys + inv[2]) / wz - 0.5;
      const double sy = (inv[3] * xs + inv[4] * ys + inv[5]) / wz - 0.5;
      for (int c = 0; c < 3; ++c)
        out.at(y, x, c) = sample(img, float(sx), float(sy), c);
    }
  }
  return out;
}

// Solves the 8x8 linear system for the unit-square to quad homography.
void gauss_solve(std::array<std::array<double, 9>, 8>& m) {
  for (int col = 0; col < 8; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 8; ++r)
      if (std::fabs(m[size_t(r)][size_t(col)]) >
          std::fabs(m[size_t(pivot)][size_t(col)]))
        pivot = r;
    std::swap(m[size_t(col)], m[size_t(pivot)]);
    const double p = m[size_t(col)][size_t(col)];
    if (std::fabs(p) < 1e-12)
      fail(ErrorCode::geometry, "degenerate corner configuration");
    for (int r = 0; r < 8; ++r) {
      if (r == col) continue;
      const double f = m[size_t(r)][size_t(col)] / p;
      for (int k = col; k < 9; ++k)
        m[size_t(r)][size_t(k)] -= f * m[size_t(col)][size_t(k)];
    }
  }
  for (int r = 0; r < 8; ++r) m[size_t(r)][8] /= m[size_t(r)][size_t(r)];
}

}  // namespace

std::array<double, 9> homography_from_unit_square(
    const std::array<double, 8>& corners) {
  const double src[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  std::array<std::array<double, 9>, 8> m{};
  for (int i = 0; i < 4; ++i) {
    const double sx = src[i][0], sy = src[i][1];
    const double dx = corners[size_t(i) * 2], dy = corners[size_t(i) * 2 + 1];
    m[size_t(i) * 2] = {sx, sy, 1, 0, 0, 0, -sx * dx, -sy * dx, dx};
    m[size_t(i) * 2 + 1] = {0, 0, 0, sx, sy, 1, -sx * dy, -sy * dy, dy};
  }
  gauss_solve(m);
  std::array<double, 9> h{};
  for (int i = 0; i < 8; ++i) h[size_t(i)] = m[size_t(i)][8];
  h[8] = 1.0;
  return h;
}

Image rotate_image(const Image& img, double degrees) {
  const double rad = degrees * 3.14159265358979323846 / 180.0;
  const double cs = std::cos(rad), sn = std::sin(rad);
  const double cx = img.w * 0.5, cy = img.h * 0.5;
  // rotation about the image center as a forward homography
  const std::array<double, 9> fwd = {cs, -sn, cx - cs * cx + sn * cy,
                                     sn, cs,  cy - sn * cx - cs * cy,
                                     0,  0,   1};
  return apply_homography(img, fwd);
}

Image warp_corners(const Image& img, const std::array<double, 8>& corner_px) {
  std::array<double, 8> unit{};
  for (int i = 0; i < 4; ++i) {
    unit[size_t(i) * 2] = corner_px[size_t(i) * 2] / img.w;
    unit[size_t(i) * 2 + 1] = corner_px[size_t(i) * 2 + 1] / img.h;
  }
  auto h = homography_from_unit_square(unit);
  // scale unit-square coordinates to pixels on both sides
  const std::array<double, 9> to_unit = {1.0 / img.w, 0, 0, 0, 1.0 / img.h, 0,
                                         0,           0, 1};
  std::array<double, 9> fwd{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      double acc = 0;
      for (int k = 0; k < 3; ++k)
        acc += h[size_t(r) * 3 + size_t(k)] * to_unit[size_t(k) * 3 + size_t(c)];
      fwd[size_t(r) * 3 + size_t(c)] = acc;
    }
  fwd[0] *= img.w; fwd[1] *= img.w; fwd[2] *= img.w;
  fwd[3] *= img.h; fwd[4] *= img.h; fwd[5] *= img.h;
  return apply_homography(img, fwd);
}

Image truncate_edge(const Image& img, int edge, double frac) {
  Image out = img;
  const int dh = int(std::lround(frac * img.h));
  const int dw = int(std::lround(frac * img.w));
  auto black = [&](int y0, int y1, int x0, int x1) {
    for (int y = y0; y < y1; ++y)
      for (int x = x0; x < x1; ++x)
        for (int c = 0; c < 3; ++c) out.at(y, x, c) = 0.f;
  };
  switch (edge & 3) {
    case 0: black(0, dh, 0, img.w); break;
    case 1: black(img.h - dh, img.h, 0, img.w); break;
    case 2: black(0, img.h, 0, dw); break;
    case 3: black(0, img.h, img.w - dw, img.w); break;
  }
  return out;
}

Image augment(const Image& img, const AugmentConfig& cfg, Rng& rng) {
  const bool do_rot = rng.bernoulli(cfg.prob);
  const double rot = do_rot ? rng.uniform(-cfg.rotation_deg, cfg.rotation_deg)
                            : 0.0;
  const bool do_proj = rng.bernoulli(cfg.prob);
  std::array<double, 8> corners = {0, 0, double(img.w), 0,
                                   double(img.w), double(img.h),
                                   0, double(img.h)};
  if (do_proj) {
    const double j = cfg.projective_frac;
    for (size_t i = 0; i < corners.size(); ++i)
      corners[i] += rng.uniform(-j, j) * (i % 2 == 0 ? img.w : img.h);
  }
  const bool do_color = rng.bernoulli(cfg.prob);
  std::array<float, 3> gain = {1, 1, 1};
  float offset = 0;
  if (do_color) {
    for (auto& g : gain)
      g = rng.uniform_f(float(cfg.color_gain_lo), float(cfg.color_gain_hi));
    offset = rng.uniform_f(float(-cfg.color_offset), float(cfg.color_offset));
  }
  const bool do_trunc = rng.bernoulli(cfg.prob);
  const int edge = int(rng.below(4));
  const double trunc = do_trunc ? rng.uniform(0.0, cfg.truncation_frac) : 0.0;

  Image out = img;
  if (do_rot) out = rotate_image(out, rot);
  if (do_proj) out = warp_corners(out, corners);
  if (do_color) {
    for (int y = 0; y < out.h; ++y)
      for (int x = 0; x < out.w; ++x)
        for (int c = 0; c < 3; ++c)
          out.at(y, x, c) = out.at(y, x, c) * gain[size_t(c)] + offset;
  }
  if (do_trunc) out = truncate_edge(out, edge, trunc);
  out.clamp01();
  return out;
}

}  // namespace atn
