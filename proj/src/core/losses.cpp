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

#include "core/losses.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/model.hpp"  // sig_push

namespace atn {

namespace {

constexpr double kTwoPi = 6.283185307179586;

void require_same_dim(size_t a, size_t b) {
  if (a != b)
    fail(ErrorCode::config, "embedding dimension mismatch: " +
                                std::to_string(a) + " vs " +
                                std::to_string(b));
}

}  // namespace

double default_sigma(int steps) {
  return std::sqrt((double(steps) * steps - 1.0) / 12.0);
}

double euclidean_distance(std::span<const double> u,
                          std::span<const double> v) {
  require_same_dim(u.size(), v.size());
  double acc = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double euclidean_distance(std::span<const float> u, std::span<const float> v) {
  require_same_dim(u.size(), v.size());
  double acc = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    const double d = double(u[i]) - double(v[i]);
    acc += d * d;
  }
  return std::sqrt(acc);
}

std::vector<double> centroid3(std::span<const double> a,
                              std::span<const double> p,
                              std::span<const double> n) {
  require_same_dim(a.size(), p.size());
  require_same_dim(a.size(), n.size());
  std::vector<double> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + p[i] + n[i]) / 3.0;
  return c;
}

LossValue triplet_loss(const TripletDistances& d, double margin) {
  if (margin < 0) fail(ErrorCode::config, "negative triplet margin");
  LossValue v;
  v.term1 = std::max(d.d_p - d.d_n + margin, 0.0);
  v.term2 = 0;
  v.total = v.term1;
  return v;
}

double adaptive_margin(int n_a, int n_n, const MarginConfig& cfg) {
  if (cfg.sigma <= 0)
    fail(ErrorCode::config, "adaptive margin requires sigma > 0");
  const double delta = double(n_n) - double(n_a);
  const double norm = cfg.norm == MarginNorm::as_printed
                          ? 1.0 / std::sqrt(kTwoPi * cfg.sigma)
                          : 1.0 / (cfg.sigma * std::sqrt(kTwoPi));
  return norm * std::exp(-(delta * delta) / (2.0 * cfg.sigma * cfg.sigma)) *
         cfg.a;
}

double lambda_at(const LambdaSchedule& s, int epoch) {
  if (epoch <= s.warmup_epochs) return 0.0;
  if (s.ramp_epochs <= 0) return s.lambda_max;
  const double ramp =
      s.lambda_max * double(epoch - s.warmup_epochs) / double(s.ramp_epochs);
  return ramp < s.lambda_max ? ramp : s.lambda_max;
}

double resolve_margin_alpha(const MarginConfig& cfg, int n_a, int n_n) {
  return cfg.mode == MarginMode::adaptive ? adaptive_margin(n_a, n_n, cfg)
                                          : cfg.m_alpha;
}

LossValue anomaly_triplet_loss(const TripletDistances& d, double m_alpha,
                               double m_beta, double lambda) {
  if (lambda > 0 && !d.has_ano())
    fail(ErrorCode::config,
         "anomaly distance required when lambda > 0");
  LossValue v = triplet_loss(d, m_alpha);
  if (d.has_ano()) {
    if (m_beta < 0) fail(ErrorCode::config, "negative m_beta");
    v.term2 = std::max(d.d_n - d.d_ano + m_beta, 0.0);
    v.total = v.term1 + lambda * v.term2;
  }
  return v;
}

LossValue anomaly_triplet_loss(const TripletDistances& d,
                               const MarginConfig& cfg, double lambda,
                               int n_a, int n_n) {
  return anomaly_triplet_loss(d, resolve_margin_alpha(cfg, n_a, n_n),
                              cfg.m_beta, lambda);
}

QuadrupletGrads anomaly_triplet_backward(std::span<const double> a,
                                         std::span<const double> p,
                                         std::span<const double> n,
                                         std::span<const double> anomaly,
                                         double m_alpha, double m_beta,
                                         double lambda) {
  const size_t dim = a.size();
  QuadrupletGrads out;
  out.d.d_p = euclidean_distance(a, p);
  out.d.d_n = euclidean_distance(a, n);
  out.g_a.assign(dim, 0.0);
  out.g_p.assign(dim, 0.0);
  out.g_n.assign(dim, 0.0);

  std::vector<double> centroid;
  if (!anomaly.empty()) {
    centroid = centroid3(a, p, n);
    out.d.d_ano = euclidean_distance(centroid, anomaly);
    out.g_ano.assign(dim, 0.0);
  }
  out.loss = anomaly_triplet_loss(out.d, m_alpha, m_beta,
                                  anomaly.empty() ? 0.0 : lambda);

  const bool h1 = out.d.d_p - out.d.d_n + m_alpha > 0;
  out.kink_sig = sig_push(out.kink_sig, h1);
  if (h1) {
    if (out.d.d_p > 0) {
      const double inv = 1.0 / out.d.d_p;
      for (size_t i = 0; i < dim; ++i) {
        const double u = (a[i] - p[i]) * inv;
        out.g_a[i] += u;
        out.g_p[i] -= u;
      }
    }
    if (out.d.d_n > 0) {
      const double inv = 1.0 / out.d.d_n;
      for (size_t i = 0; i < dim; ++i) {
        const double u = (a[i] - n[i]) * inv;
        out.g_a[i] -= u;
        out.g_n[i] += u;
      }
    }
  }

  if (!anomaly.empty() && lambda > 0) {
    const bool h2 = out.d.d_n - out.d.d_ano + m_beta > 0;
    out.kink_sig = sig_push(out.kink_sig, h2);
    if (h2) {
      if (out.d.d_n > 0) {
        const double inv = lambda / out.d.d_n;
        for (size_t i = 0; i < dim; ++i) {
          const double u = (a[i] - n[i]) * inv;
          out.g_a[i] += u;
          out.g_n[i] -= u;
        }
      }
      if (out.d.d_ano > 0) {
        const double inv = lambda / out.d.d_ano;
        for (size_t i = 0; i < dim; ++i) {
          // pushes the anomaly away from the triplet centroid
          const double u = (centroid[i] - anomaly[i]) * inv;
          const double third = u / 3.0;
          out.g_a[i] -= third;
          out.g_p[i] -= third;
          out.g_n[i] -= third;
          out.g_ano[i] += u;
        }
      }
    }
  }
  return out;
}

}  // namespace atn
