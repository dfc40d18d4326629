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

#include <span>
#include <string>
#include <vector>

#include "core/layers.hpp"
#include "core/rng.hpp"
#include "core/tensor.hpp"

namespace atn {

template <typename T>
struct ParameterT {
  std::string name;
  TensorT<T> value;
  TensorT<T> grad;
  TensorT<T> momentum;
};

/// Per-call forward state retained for backward. Tapes are independent of
/// the model, so concurrent forward passes over shared weights are safe.
template <typename T>
struct TapeT {
  std::vector<TensorT<T>> inputs;                 // input of each layer
  std::vector<std::vector<int32_t>> pool_argmax;  // per pool layer
  TensorT<T> output;
  bool want_kink_sig = false;
  uint64_t kink_sig = 0;  // hash of relu sign pattern + pool argmax choices
};

/// Gradient accumulation buffer aligned with ModelT::params(). Workers
/// accumulate into private buffers which are reduced in fixed index order.
template <typename T>
struct GradsT {
  std::vector<TensorT<T>> g;

  void zero() {
    for (auto& t : g) t.fill(T(0));
  }
  void add(const GradsT& o) {
    for (size_t i = 0; i < g.size(); ++i) {
      const int64_t n = g[i].size();
      for (int64_t j = 0; j < n; ++j) g[i].data[j] += o.g[i].data[j];
    }
  }
};

inline uint64_t sig_push(uint64_t sig, uint64_t v) {
  return (sig ^ v) * 1099511628211ull;
}

template <typename T>
class ModelT {
 public:
  ModelT() = default;

  ModelT(std::vector<LayerSpec> layers, std::vector<int> input_shape)
      : layers_(std::move(layers)), input_shape_(std::move(input_shape)) {
    shapes_ = shape_pipeline(layers_, input_shape_);
    for (size_t i = 0; i < layers_.size(); ++i) {
      const LayerSpec& s = layers_[i];
      if (!s.has_params()) continue;
      const std::string base = layer_name(layers_, i);
      param_index_.push_back({i, params_.size()});
      if (s.kind == LayerKind::conv2d) {
        push_param(base + ".weight", {s.out_ch, s.in_ch, s.kernel, s.kernel});
        push_param(base + ".bias", {s.out_ch});
      } else {
        push_param(base + ".weight", {s.out_features, s.in_features});
        push_param(base + ".bias", {s.out_features});
      }
    }
  }

  const std::vector<LayerSpec>& layers() const { return layers_; }
  const std::vector<int>& input_shape() const { return input_shape_; }
  const std::vector<int>& output_shape() const { return shapes_.back(); }
  std::vector<ParameterT<T>>& params() { return params_; }
  const std::vector<ParameterT<T>>& params() const { return params_; }

  // He-scaled uniform init; per-layer derived streams keep draws stable
  // when other layers change.
  void init_weights(uint64_t seed) {
    for (auto& [layer, slot] : param_index_) {
      const LayerSpec& s = layers_[layer];
      const int fan_in = s.kind == LayerKind::conv2d
                             ? s.in_ch * s.kernel * s.kernel
                             : s.in_features;
      const double bound = std::sqrt(6.0 / fan_in);
      Rng rng(mix64(seed, uint64_t(layer)));
      auto& w = params_[slot].value;
      for (auto& v : w.data) v = static_cast<T>(rng.uniform(-bound, bound));
      params_[slot + 1].value.fill(T(0));  // bias
    }
  }

  TensorT<T> forward(const TensorT<T>& input, TapeT<T>* tape = nullptr) const {
    if (input.shape != input_shape_)
      fail(ErrorCode::config,
           layer_name(layers_, 0) + ": expected input " +
               Tensor::shape_str(input_shape_) + ", got " +
               Tensor::shape_str(input.shape));
    if (tape) {
      tape->inputs.clear();
      tape->pool_argmax.assign(layers_.size(), {});
      tape->kink_sig = 0;
    }
    TensorT<T> cur = input;
    for (size_t i = 0; i < layers_.size(); ++i) {
      const LayerSpec& s = layers_[i];
      if (tape) tape->inputs.push_back(cur);
      TensorT<T> out(shapes_[i + 1]);
      switch (s.kind) {
        case LayerKind::conv2d:
          conv2d_forward(s, cur, value_at(i, 0), value_at(i, 1), out);
          break;
        case LayerKind::relu:
          relu_forward(cur, out);
          if (tape && tape->want_kink_sig)
            for (const T v : cur.data)
              tape->kink_sig = sig_push(tape->kink_sig, v > T(0));
          break;
        case LayerKind::maxpool2x2: {
          std::vector<int32_t> scratch;
          std::vector<int32_t>& arg = tape ? tape->pool_argmax[i] : scratch;
          maxpool2x2_forward(cur, out, arg);
          if (tape && tape->want_kink_sig)
            for (const int32_t a : arg)
              tape->kink_sig = sig_push(tape->kink_sig, uint64_t(a));
          break;
        }
        case LayerKind::linear: {
          TensorT<T> flat(std::vector<int>{s.in_features});
          flat.data = cur.data;
          linear_forward(s, flat, value_at(i, 0), value_at(i, 1), out);
          break;
        }
      }
      cur = std::move(out);
    }
    if (tape) tape->output = cur;
    return cur;
  }

  // Accumulates parameter gradients into `sink` and returns d(loss)/d(input).
  TensorT<T> backward(const TapeT<T>& tape, const TensorT<T>& dout,
                      GradsT<T>& sink) const {
    if (tape.inputs.size() != layers_.size())
      fail(ErrorCode::state, "backward called without a completed forward");
    if (dout.shape != shapes_.back())
      fail(ErrorCode::config, "upstream gradient shape " +
                                  Tensor::shape_str(dout.shape) +
                                  " does not match output " +
                                  Tensor::shape_str(shapes_.back()));
    TensorT<T> grad = dout;
    for (size_t ri = layers_.size(); ri-- > 0;) {
      const LayerSpec& s = layers_[ri];
      const TensorT<T>& in = tape.inputs[ri];
      TensorT<T> din(in.shape);
      switch (s.kind) {
        case LayerKind::conv2d:
          conv2d_backward(s, in, value_at(ri, 0), grad, din, grad_at(sink, ri, 0),
                          grad_at(sink, ri, 1));
          break;
        case LayerKind::relu:
          relu_backward(in, grad, din);
          break;
        case LayerKind::maxpool2x2:
          maxpool2x2_backward(in, grad, tape.pool_argmax[ri], din);
          break;
        case LayerKind::linear: {
          TensorT<T> flat(std::vector<int>{s.in_features});
          flat.data = in.data;
          TensorT<T> dflat(std::vector<int>{s.in_features});
          linear_backward(s, flat, value_at(ri, 0), grad, dflat,
                          grad_at(sink, ri, 0), grad_at(sink, ri, 1));
          din.data = std::move(dflat.data);
          break;
        }
      }
      grad = std::move(din);
    }
    return grad;
  }

  GradsT<T> make_grads() const {
    GradsT<T> out;
    out.g.reserve(params_.size());
    for (const auto& p : params_) out.g.emplace_back(p.value.shape);
    return out;
  }

  int64_t param_count() const {
    int64_t n = 0;
    for (const auto& p : params_) n += p.value.size();
    return n;
  }

  std::vector<T> flatten_params() const {
    std::vector<T> flat;
    flat.reserve(size_t(param_count()));
    for (const auto& p : params_)
      flat.insert(flat.end(), p.value.data.begin(), p.value.data.end());
    return flat;
  }

  void set_params_flat(std::span<const T> flat) {
    size_t off = 0;
    for (auto& p : params_) {
      std::copy(flat.begin() + off, flat.begin() + off + p.value.data.size(),
                p.value.data.begin());
      off += p.value.data.size();
    }
  }

  // Maps a flat parameter coordinate back to its parameter name.
  std::string param_coord_name(int64_t coord) const {
    for (const auto& p : params_) {
      if (coord < p.value.size()) return p.name;
      coord -= p.value.size();
    }
    return "?";
  }

  template <typename U>
  ModelT<U> cast() const {
    ModelT<U> out(layers_, input_shape_);
    for (size_t i = 0; i < params_.size(); ++i)
      out.params()[i].value = params_[i].value.template cast<U>();
    return out;
  }

 private:
  void push_param(const std::string& name, std::vector<int> shape) {
    ParameterT<T> p;
    p.name = name;
    p.value = TensorT<T>(shape);
    p.grad = TensorT<T>(shape);
    p.momentum = TensorT<T>(std::move(shape));
    params_.push_back(std::move(p));
  }

  const TensorT<T>& value_at(size_t layer, int which) const {
    return params_[slot_of(layer) + which].value;
  }
  TensorT<T>& grad_at(GradsT<T>& sink, size_t layer, int which) const {
    return sink.g[slot_of(layer) + which];
  }
  size_t slot_of(size_t layer) const {
    for (const auto& [l, slot] : param_index_)
      if (l == layer) return slot;
    fail(ErrorCode::state, "layer has no parameters");
  }

  std::vector<LayerSpec> layers_;
  std::vector<int> input_shape_;
  std::vector<std::vector<int>> shapes_;
  std::vector<ParameterT<T>> params_;
  std::vector<std::pair<size_t, size_t>> param_index_;
};

using Model = ModelT<float>;

}  // namespace atn
