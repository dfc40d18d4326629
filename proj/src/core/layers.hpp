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

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/tensor.hpp"

namespace atn {

enum class LayerKind { conv2d, relu, maxpool2x2, linear };

struct LayerSpec {
  LayerKind kind = LayerKind::relu;
  // conv2d
  int in_ch = 0, out_ch = 0, kernel = 0, stride = 1, pad = 0;
  // linear
  int in_features = 0, out_features = 0;

  static LayerSpec conv(int in_ch, int out_ch, int kernel, int stride,
                        int pad);
  static LayerSpec relu();
  static LayerSpec maxpool2x2();
  static LayerSpec linear(int in_features, int out_features);

  bool has_params() const {
    return kind == LayerKind::conv2d || kind == LayerKind::linear;
  }
  std::string describe() const;
};

// Walks a layer chain from an input shape, validating every transition.
// Throws a configuration error naming the offending layer.
std::vector<std::vector<int>> shape_pipeline(
    const std::vector<LayerSpec>& layers, const std::vector<int>& input_shape);

std::string layer_name(const std::vector<LayerSpec>& layers, size_t index);

inline int conv_out_dim(int in, int kernel, int stride, int pad) {
  return (in + 2 * pad - kernel) / stride + 1;
}

// ---------------------------------------------------------------------
// Kernels. Input/output layout is [C,H,W] row-major. Accumulation order
// is fixed (ky, kx outer, input channel inner, row-major over x) so runs
// are reproducible; the inner loops are over contiguous rows and
// auto-vectorize without changing per-output rounding.
// ---------------------------------------------------------------------

template <typename T>
void conv2d_forward(const LayerSpec& s, const TensorT<T>& in,
                    const TensorT<T>& w, const TensorT<T>& b,
                    TensorT<T>& out) {
  const int C = s.in_ch, K = s.kernel, S = s.stride, P = s.pad;
  const int H = in.shape[1], W = in.shape[2];
  const int OH = conv_out_dim(H, K, S, P), OW = conv_out_dim(W, K, S, P);
  const T* wd = w.ptr();
  const T* id = in.ptr();
  T* od = out.ptr();
  for (int oc = 0; oc < s.out_ch; ++oc) {
    const T bias = b.data[oc];
    for (int oy = 0; oy < OH; ++oy) {
      T* __restrict acc = od + (int64_t(oc) * OH + oy) * OW;
      for (int ox = 0; ox < OW; ++ox) acc[ox] = bias;
      for (int ky = 0; ky < K; ++ky) {
        const int iy = oy * S + ky - P;
        if (iy < 0 || iy >= H) continue;
        for (int kx = 0; kx < K; ++kx) {
          // valid ox window: 0 <= ox*S + kx - P < W
          int lo = 0, hi = OW;
          if (S == 1) {
            lo = std::max(0, P - kx);
            hi = std::min(OW, W + P - kx);
          } else {
            while (lo < OW && lo * S + kx - P < 0) ++lo;
            while (hi > lo && (hi - 1) * S + kx - P >= W) --hi;
          }
          if (lo >= hi) continue;
          const T* wrow = wd + ((int64_t(oc) * C) * K + ky) * K + kx;
          for (int ic = 0; ic < C; ++ic) {
            const T wk = wrow[int64_t(ic) * K * K];
            const T* __restrict irow = id + (int64_t(ic) * H + iy) * W;
            if (S == 1) {
              const T* __restrict ip = irow + kx - P;
              for (int ox = lo; ox < hi; ++ox) acc[ox] += wk * ip[ox];
            } else {
              for (int ox = lo; ox < hi; ++ox)
                acc[ox] += wk * irow[ox * S + kx - P];
            }
          }
        }
      }
    }
  }
}

template <typename T>
void conv2d_backward(const LayerSpec& s, const TensorT<T>& in,
                     const TensorT<T>& w, const TensorT<T>& dout,
                     TensorT<T>& din, TensorT<T>& dw, TensorT<T>& db) {
  const int C = s.in_ch, K = s.kernel, S = s.stride, P = s.pad;
  const int H = in.shape[1], W = in.shape[2];
  const int OH = conv_out_dim(H, K, S, P), OW = conv_out_dim(W, K, S, P);
  const T* wd = w.ptr();
  const T* id = in.ptr();
  const T* gd = dout.ptr();
  din.fill(T(0));
  for (int oc = 0; oc < s.out_ch; ++oc) {
    T bsum = 0;
    for (int oy = 0; oy < OH; ++oy) {
      const T* __restrict grow = gd + (int64_t(oc) * OH + oy) * OW;
      for (int ox = 0; ox < OW; ++ox) bsum += grow[ox];
      for (int ky = 0; ky < K; ++ky) {
        const int iy = oy * S + ky - P;
        if (iy < 0 || iy >= H) continue;
        for (int kx = 0; kx < K; ++kx) {
          int lo = 0, hi = OW;
          if (S == 1) {
            lo = std::max(0, P - kx);
            hi = std::min(OW, W + P - kx);
          } else {
            while (lo < OW && lo * S + kx - P < 0) ++lo;
            while (hi > lo && (hi - 1) * S + kx - P >= W) --hi;
          }
          if (lo >= hi) continue;
          const int64_t woff = ((int64_t(oc) * C) * K + ky) * K + kx;
          for (int ic = 0; ic < C; ++ic) {
            const T wk = wd[woff + int64_t(ic) * K * K];
            const T* __restrict irow = id + (int64_t(ic) * H + iy) * W;
            T* __restrict drow = din.ptr() + (int64_t(ic) * H + iy) * W;
            T wsum = 0;
            if (S == 1) {
              const int off = kx - P;
              for (int ox = lo; ox < hi; ++ox) {
                drow[ox + off] += wk * grow[ox];
                wsum += grow[ox] * irow[ox + off];
              }
            } else {
              for (int ox = lo; ox < hi; ++ox) {
                const int ix = ox * S + kx - P;
                drow[ix] += wk * grow[ox];
                wsum += grow[ox] * irow[ix];
              }
            }
            dw.data[woff + int64_t(ic) * K * K] += wsum;
          }
        }
      }
    }
    db.data[oc] += bsum;
  }
}

template <typename T>
void relu_forward(const TensorT<T>& in, TensorT<T>& out) {
  const int64_t n = in.size();
  for (int64_t i = 0; i < n; ++i)
    out.data[i] = in.data[i] > T(0) ? in.data[i] : T(0);
}

template <typename T>
void relu_backward(const TensorT<T>& in, const TensorT<T>& dout,
                   TensorT<T>& din) {
  const int64_t n = in.size();
  for (int64_t i = 0; i < n; ++i)
    din.data[i] = in.data[i] > T(0) ? dout.data[i] : T(0);
}

template <typename T>
void maxpool2x2_forward(const TensorT<T>& in, TensorT<T>& out,
                        std::vector<int32_t>& argmax) {
  const int C = in.shape[0], H = in.shape[1], W = in.shape[2];
  const int OH = H / 2, OW = W / 2;
  argmax.resize(size_t(C) * OH * OW);
  for (int c = 0; c < C; ++c) {
    const T* plane = in.ptr() + int64_t(c) * H * W;
    for (int oy = 0; oy < OH; ++oy) {
      for (int ox = 0; ox < OW; ++ox) {
        const int y = oy * 2, x = ox * 2;
        int best = y * W + x;
        T v = plane[best];
        const int cand[3] = {y * W + x + 1, (y + 1) * W + x,
                             (y + 1) * W + x + 1};
        for (int idx : cand) {
          if (plane[idx] > v) {
            v = plane[idx];
            best = idx;
          }
        }
        const int64_t o = (int64_t(c) * OH + oy) * OW + ox;
        out.data[o] = v;
        argmax[o] = best;
      }
    }
  }
}

template <typename T>
void maxpool2x2_backward(const TensorT<T>& in, const TensorT<T>& dout,
                         const std::vector<int32_t>& argmax, TensorT<T>& din) {
  const int C = in.shape[0], H = in.shape[1], W = in.shape[2];
  const int64_t plane = int64_t(H) * W, on = dout.size() / C;
  din.fill(T(0));
  for (int c = 0; c < C; ++c)
    for (int64_t o = 0; o < on; ++o)
      din.data[c * plane + argmax[c * on + o]] += dout.data[c * on + o];
}

template <typename T>
void linear_forward(const LayerSpec& s, const TensorT<T>& in,
                    const TensorT<T>& w, const TensorT<T>& b,
                    TensorT<T>& out) {
  const int IN = s.in_features, OUT = s.out_features;
  const T* x = in.ptr();
  for (int o = 0; o < OUT; ++o) {
    const T* __restrict wrow = w.ptr() + int64_t(o) * IN;
    T acc = b.data[o];
    for (int i = 0; i < IN; ++i) acc += wrow[i] * x[i];
    out.data[o] = acc;
  }
}

template <typename T>
void linear_backward(const LayerSpec& s, const TensorT<T>& in,
                     const TensorT<T>& w, const TensorT<T>& dout,
                     TensorT<T>& din, TensorT<T>& dw, TensorT<T>& db) {
  const int IN = s.in_features, OUT = s.out_features;
  din.fill(T(0));
  for (int o = 0; o < OUT; ++o) {
    const T g = dout.data[o];
    const T* __restrict wrow = w.ptr() + int64_t(o) * IN;
    T* __restrict dwrow = dw.ptr() + int64_t(o) * IN;
    T* __restrict dx = din.ptr();
    const T* __restrict x = in.ptr();
    for (int i = 0; i < IN; ++i) {
      dx[i] += g * wrow[i];
      dwrow[i] += g * x[i];
    }
    db.data[o] += g;
  }
}

}  // namespace atn
