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

#include "core/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "core/errors.hpp"

namespace fs = std::filesystem;

namespace atn {

namespace {

constexpr double kInteriorMargin = 0.14;

void validate(const SynthConfig& cfg) {
  if (cfg.steps < 2) fail(ErrorCode::config, "need at least 2 steps");
  if (cfg.per_step < 2)
    fail(ErrorCode::config, "need at least 2 images per step");
  if (cfg.size < 16) fail(ErrorCode::config, "image size must be >= 16");
}

std::array<float, 3> hsv_to_rgb(float h, float s, float v) {
  h = h - std::floor(h);
  const float c = v * s;
  const float hp = h * 6.f;
  const float x = c * (1.f - std::fabs(std::fmod(hp, 2.f) - 1.f));
  float r = 0, g = 0, b = 0;
  if (hp < 1) r = c, g = x;
  else if (hp < 2) r = x, g = c;
  else if (hp < 3) g = c, b = x;
  else if (hp < 4) g = x, b = c;
  else if (hp < 5) r = x, b = c;
  else r = c, b = x;
  const float m = v - c;
  return {r + m, g + m, b + m};
}

struct Grid {
  int cols, rows, ix0, iy0, cell_w, cell_h;
};

Grid slot_grid(const SynthConfig& cfg) {
  Grid g{};
  g.cols = int(std::ceil(std::sqrt(double(cfg.steps))));
  g.rows = int(std::ceil(double(cfg.steps) / g.cols));
  const int margin = int(std::lround(kInteriorMargin * cfg.size));
  g.ix0 = margin;
  g.iy0 = margin;
  g.cell_w = (cfg.size - 2 * margin) / g.cols;
  g.cell_h = (cfg.size - 2 * margin) / g.rows;
  return g;
}

void fill_rect(Image& img, int x0, int y0, int x1, int y1,
               const std::array<float, 3>& c) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, img.w);
  y1 = std::min(y1, img.h);
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x)
      for (int ch = 0; ch < 3; ++ch) img.at(y, x, ch) = c[size_t(ch)];
}

// Glyph kinds cycle with the part index; each reads as a distinct
// component silhouette at small sizes.
void draw_glyph(Image& img, int part, float cx, float cy, float half,
                const std::array<float, 3>& color) {
  const int kind = (part - 1) % 8;
  const int y0 = std::max(0, int(std::floor(cy - half - 1)));
  const int y1 = std::min(img.h, int(std::ceil(cy + half + 1)));
  const int x0 = std::max(0, int(std::floor(cx - half - 1)));
  const int x1 = std::min(img.w, int(std::ceil(cx + half + 1)));
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      const float dx = (float(x) + 0.5f - cx) / half;
      const float dy = (float(y) + 0.5f - cy) / half;
      const float ax = std::fabs(dx), ay = std::fabs(dy);
      bool inside = false;
      switch (kind) {
        case 0:  // plate
          inside = ax <= 1.f && ay <= 0.8f;
          break;
        case 1:  // disc
          inside = dx * dx + dy * dy <= 1.f;
          break;
        case 2:  // bars
          inside = ax <= 1.f && (std::fmod(dy + 1.f, 0.67f) < 0.37f) &&
                   ay <= 1.f;
          break;
        case 3:  // cross
          inside = (ax <= 0.34f && ay <= 1.f) || (ay <= 0.34f && ax <= 1.f);
          break;
        case 4: {  // ring
          const float r2 = dx * dx + dy * dy;
          inside = r2 <= 1.f && r2 >= 0.36f;
          break;
        }
        case 5:  // triangle
          inside = dy >= -1.f && dy <= 1.f && ax <= (dy + 1.f) * 0.5f;
          break;
        case 6:  // diamond
          inside = ax + ay <= 1.f;
          break;
        case 7:  // checker
          inside = ax <= 1.f && ay <= 1.f && ((dx > 0) == (dy > 0));
          break;
      }
      if (inside)
        for (int ch = 0; ch < 3; ++ch) img.at(y, x, ch) = color[size_t(ch)];
    }
  }
}

}  // namespace

SlotRect part_slot(const SynthConfig& cfg, int part) {
  if (part < 1 || part > cfg.steps)
    fail(ErrorCode::config, "part index out of range");
  const Grid g = slot_grid(cfg);
  const int idx = part - 1;
  const int col = idx % g.cols, row = idx / g.cols;
  const int inset_x = std::max(1, g.cell_w / 8);
  const int inset_y = std::max(1, g.cell_h / 8);
  SlotRect r;
  r.x0 = g.ix0 + col * g.cell_w + inset_x;
  r.y0 = g.iy0 + row * g.cell_h + inset_y;
  r.x1 = g.ix0 + (col + 1) * g.cell_w - inset_x;
  r.y1 = g.iy0 + (row + 1) * g.cell_h - inset_y;
  return r;
}

std::array<float, 3> part_color(int part) {
  const float hue = 0.07f + 0.618033988749895f * float(part - 1);
  return hsv_to_rgb(hue, 0.68f, 0.92f);
}

Image render_step_image(const SynthConfig& cfg, int step,
                        uint64_t image_seed) {
  validate(cfg);
  if (step < 1 || step > cfg.steps)
    fail(ErrorCode::config, "step out of range");
  const int S = cfg.size;
  Image img(S, S);
  Rng rng(image_seed);

  // all whole-image draws happen before the parts so that adding part k+1
  // leaves parts 1..k pixel-identical for a given image seed
  const double noise_amp = rng.uniform(0.01, 0.03);
  const double chassis_jit = rng.uniform(-0.02, 0.02);
  const double gain = rng.uniform(0.88, 1.12);

  for (int y = 0; y < S; ++y) {
    const float base = 0.10f + 0.06f * float(y) / float(S);
    for (int x = 0; x < S; ++x) {
      const float n = float(rng.uniform(-noise_amp, noise_amp));
      for (int c = 0; c < 3; ++c) img.at(y, x, c) = base + n;
    }
  }

  const int m = int(std::lround(kInteriorMargin * S)) - 2;
  const float body = float(0.24 + chassis_jit);
  fill_rect(img, m, m, S - m, S - m, {body, body, body + 0.015f});
  const float edge = body + 0.13f;
  fill_rect(img, m, m, S - m, m + 1, {edge, edge, edge});
  fill_rect(img, m, S - m - 1, S - m, S - m, {edge, edge, edge});
  fill_rect(img, m, m, m + 1, S - m, {edge, edge, edge});
  fill_rect(img, S - m - 1, m, S - m, S - m, {edge, edge, edge});

  for (int part = 1; part <= step; ++part) {
    Rng prng(mix64(image_seed, 0x9000 + uint64_t(part)));
    const SlotRect slot = part_slot(cfg, part);
    const float sw = float(slot.x1 - slot.x0), sh = float(slot.y1 - slot.y0);
    const float half = 0.5f * std::min(sw, sh) * 0.84f *
                       float(prng.uniform(0.85, 1.08));
    const float cx = 0.5f * float(slot.x0 + slot.x1) +
                     float(prng.uniform(-0.06, 0.06)) * sw;
    const float cy = 0.5f * float(slot.y0 + slot.y1) +
                     float(prng.uniform(-0.06, 0.06)) * sh;
    auto base = part_color(part);
    const float vjit = float(prng.uniform(-0.08, 0.08));
    std::array<float, 3> color{};
    for (int c = 0; c < 3; ++c)
      color[size_t(c)] = std::clamp(base[size_t(c)] + vjit, 0.f, 1.f);
    draw_glyph(img, part, cx, cy, half, color);
  }

  for (float& v : img.px) v = float(v * gain);
  img.clamp01();
  return img;
}

void generate_dataset(const SynthConfig& cfg, const std::string& root) {
  validate(cfg);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) fail(ErrorCode::io, "cannot create dataset root: " + root);
  for (int step = 1; step <= cfg.steps; ++step) {
    const fs::path dir = fs::path(root) / ("step_" + std::to_string(step));
    fs::create_directories(dir, ec);
    if (ec) fail(ErrorCode::io, "cannot create " + dir.string());
    for (int i = 0; i < cfg.per_step; ++i) {
      const Image img =
          render_step_image(cfg, step, mix64(cfg.seed, uint64_t(step), i));
      char name[32];
      std::snprintf(name, sizeof name, "img_%03d.png", i);
      write_png((dir / name).string(), img);
    }
  }
  std::ofstream mf(fs::path(root) / "manifest.txt");
  if (!mf) fail(ErrorCode::io, "cannot write manifest in " + root);
  mf << "seed = " << cfg.seed << "\n"
     << "steps = " << cfg.steps << "\n"
     << "per_step = " << cfg.per_step << "\n"
     << "size = " << cfg.size << "\n"
     << "generator = atn-synth/1\n";
}

Image occlude_image(const Image& img, Rng& rng, double cover_lo,
                    double cover_hi) {
  if (!(cover_lo > 0 && cover_lo <= cover_hi && cover_hi < 1))
    fail(ErrorCode::config, "occlusion cover range invalid");
  Image out = img;
  const double frac = rng.uniform(cover_lo, cover_hi);
  const double aspect = rng.uniform(0.5, 2.0);
  const double target = frac * img.h * img.w;
  int rh = std::clamp(int(std::lround(std::sqrt(target * aspect))), 1, img.h);
  int rw = std::clamp(int(std::lround(target / rh)), 1, img.w);
  const int y = int(rng.below(uint64_t(img.h - rh + 1)));
  const int x = int(rng.below(uint64_t(img.w - rw + 1)));
  std::array<float, 3> fillc{};
  for (int c = 0; c < 3; ++c) fillc[size_t(c)] = rng.uniform_f(0.05f, 0.35f);
  for (int yy = y; yy < y + rh; ++yy)
    for (int xx = x; xx < x + rw; ++xx)
      for (int c = 0; c < 3; ++c) out.at(yy, xx, c) = fillc[size_t(c)];
  return out;
}

void occlude_dataset(const std::string& src_root, const std::string& dst_root,
                     uint64_t seed, double cover_lo, double cover_hi) {
  if (!fs::is_directory(src_root))
    fail(ErrorCode::io, "dataset root not found: " + src_root);
  std::error_code ec;
  fs::create_directories(dst_root, ec);
  if (ec) fail(ErrorCode::io, "cannot create " + dst_root);
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(src_root))
    if (e.is_directory() && e.path().filename().string().starts_with("step_"))
      dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());
  uint64_t counter = 0;
  for (const auto& dir : dirs) {
    const fs::path out_dir = fs::path(dst_root) / dir.filename();
    fs::create_directories(out_dir, ec);
    std::vector<fs::path> files;
    for (const auto& f : fs::directory_iterator(dir))
      if (f.path().extension() == ".png") files.push_back(f.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      Rng rng(mix64(seed, counter++));
      const Image occluded =
          occlude_image(read_png(f.string()), rng, cover_lo, cover_hi);
      write_png((out_dir / f.filename()).string(), occluded);
    }
  }
}

std::vector<StreamScriptItem> parse_stream_script(const std::string& script,
                                                  int max_step) {
  std::vector<StreamScriptItem> items;
  size_t pos = 0;
  int current_step = 1;
  while (pos < script.size()) {
    size_t end = script.find(',', pos);
    if (end == std::string::npos) end = script.size();
    const std::string tok = script.substr(pos, end - pos);
    pos = end + 1;
    if (tok.empty()) continue;
    const size_t x = tok.find('x');
    if (x == std::string::npos || x + 1 >= tok.size())
      fail(ErrorCode::config, "bad stream script token: '" + tok + "'");
    StreamScriptItem item;
    try {
      item.count = std::stoi(tok.substr(x + 1));
      if (tok[0] == 'o' && x == 1) {
        item.occluded = true;
        item.step = current_step;
      } else {
        item.step = std::stoi(tok.substr(0, x));
        current_step = item.step;
      }
    } catch (const std::exception&) {
      fail(ErrorCode::config, "bad stream script token: '" + tok + "'");
    }
    if (item.count <= 0 || item.step < 1 || item.step > max_step)
      fail(ErrorCode::config, "stream script token out of range: '" + tok +
                                  "' (steps 1.." + std::to_string(max_step) +
                                  ")");
    items.push_back(item);
  }
  if (items.empty()) fail(ErrorCode::config, "empty stream script");
  return items;
}

int64_t generate_stream(const SynthConfig& cfg, const std::string& script,
                        const std::string& dir, uint64_t seed, double occ_lo,
                        double occ_hi) {
  const auto items = parse_stream_script(script, cfg.steps);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::io, "cannot create " + dir);
  std::ofstream mf(fs::path(dir) / "manifest.csv");
  mf << "frame_id,step,occluded\n";
  int64_t frame = 0;
  for (const auto& item : items) {
    for (int i = 0; i < item.count; ++i, ++frame) {
      Image img = render_step_image(cfg, item.step,
                                    mix64(seed, 0xf00d, uint64_t(frame)));
      if (item.occluded) {
        Rng rng(mix64(seed, 0x0cc1, uint64_t(frame)));
        img = occlude_image(img, rng, occ_lo, occ_hi);
      }
      char name[32];
      std::snprintf(name, sizeof name, "%06lld.png", (long long)frame);
      write_png((fs::path(dir) / name).string(), img);
      mf << frame << "," << item.step << "," << (item.occluded ? 1 : 0)
         << "\n";
    }
  }
  return frame;
}

}  // namespace atn
