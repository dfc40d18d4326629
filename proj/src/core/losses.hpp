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
#include <span>
#include <vector>

namespace atn {

// Feature-space distances of one training group. d_ano < 0 means absent.
struct TripletDistances {
  double d_p = 0;
  double d_n = 0;
  double d_ano = -1;
  bool has_ano() const { return d_ano >= 0; }
};

enum class MarginMode { fixed, adaptive };

// The adaptive margin is a Gaussian profile over the step-index gap. The
// source formula normalizes by sqrt(2*pi*sigma); `standard` switches to
// the usual sigma*sqrt(2*pi) density normalization.
enum class MarginNorm { as_printed, standard };

struct MarginConfig {
  MarginMode mode = MarginMode::fixed;
  double m = 1.0;      // fixed margin
  double a = 1.0;      // adaptive amplitude
  double sigma = 0.0;  // adaptive width; <= 0 is invalid at use time
  double m_alpha = 1.0;
  double m_beta = 1.0;
  MarginNorm norm = MarginNorm::as_printed;
};

// Variance of a discrete uniform step range 1..steps: (steps^2 - 1) / 12.
double default_sigma(int steps);

struct LambdaSchedule {
  int warmup_epochs = 50;
  int ramp_epochs = 50;
  double lambda_max = 1.0;
};

struct LossValue {
  double total = 0;
  double term1 = 0;
  double term2 = 0;  // un-weighted second term; total applies lambda
};

double euclidean_distance(std::span<const double> u,
                          std::span<const double> v);
double euclidean_distance(std::span<const float> u, std::span<const float> v);

std::vector<double> centroid3(std::span<const double> a,
                              std::span<const double> p,
                              std::span<const double> n);

LossValue triplet_loss(const TripletDistances& d, double margin);

double adaptive_margin(int n_a, int n_n, const MarginConfig& cfg);

// 0 through warmup, then a linear ramp to lambda_max.
double lambda_at(const LambdaSchedule& s, int epoch);

// Resolves the first-term margin for the configured mode.
double resolve_margin_alpha(const MarginConfig& cfg, int n_a, int n_n);

LossValue anomaly_triplet_loss(const TripletDistances& d, double m_alpha,
                               double m_beta, double lambda);
LossValue anomaly_triplet_loss(const TripletDistances& d,
                               const MarginConfig& cfg, double lambda,
                               int n_a, int n_n);

// Loss and gradients with respect to the four embeddings. `anomaly` may be
// empty when the second term is off (lambda == 0), in which case g_ano is
// empty too. Hinge subgradient at the kink is 0.
struct QuadrupletGrads {
  LossValue loss;
  TripletDistances d;
  uint64_t kink_sig = 0;  // hash of hinge activity, for kink-aware checks
  std::vector<double> g_a, g_p, g_n, g_ano;
};

QuadrupletGrads anomaly_triplet_backward(std::span<const double> a,
                                         std::span<const double> p,
                                         std::span<const double> n,
                                         std::span<const double> anomaly,
                                         double m_alpha, double m_beta,
                                         double lambda);

}  // namespace atn
