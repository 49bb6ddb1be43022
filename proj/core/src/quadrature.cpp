//
//  tetbiot: Biot-Savart velocity evaluation on tetrahedral meshes.
//
//  Copyright 2026 The tetbiot Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.
//
#include "tetbiot/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tetbiot {

namespace {

constexpr double kNewtonTolerance = 1e-15;
constexpr int kNewtonMaxIterations = 100;

// P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = n == 0 ? 1.0 : p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

GaussRule gauss_legendre(int order) {
  if (order < 1 || order > kMaxGaussOrder) {
    throw std::invalid_argument("gauss_legendre: order " + std::to_string(order) +
                                " outside [1, " + std::to_string(kMaxGaussOrder) +
                                "]");
  }
  GaussRule rule;
  rule.order = order;
  rule.nodes.assign(static_cast<std::size_t>(order), 0.0);
  rule.weights.assign(static_cast<std::size_t>(order), 0.0);

  // Roots come in +/- pairs; solve for the positive half and mirror.
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double p = 0.0;
    double dp = 0.0;
    for (int it = 0; it < kNewtonMaxIterations; ++it) {
      legendre(order, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::fabs(dx) <= kNewtonTolerance) break;
    }
    legendre(order, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(order - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (order % 2 == 1) rule.nodes[static_cast<std::size_t>(order / 2)] = 0.0;
  return rule;
}

QuadFan build_fan(int n_phi, int n_theta, double prefactor) {
  const GaussRule rp = gauss_legendre(n_phi);
  const GaussRule rt = gauss_legendre(n_theta);

  QuadFan fan;
  fan.n_phi_ = n_phi;
  fan.n_theta_ = n_theta;
  fan.prefactor_ = prefactor;
  const auto total = static_cast<std::size_t>(n_phi) * static_cast<std::size_t>(n_theta);
  fan.sx_.reserve(total);
  fan.sy_.reserve(total);
  fan.sz_.reserve(total);
  fan.weight_.reserve(total);

  constexpr double half_pi = std::numbers::pi / 2.0;
  for (int n = 0; n < n_phi; ++n) {
    const double phi = (1.0 + rp.nodes[static_cast<std::size_t>(n)]) * half_pi;
    const double sp = std::sin(phi);
    const double cp = std::cos(phi);
    fan.row_sin_.push_back(sp);
    fan.row_cos_.push_back(cp);
    for (int m = 0; m < n_theta; ++m) {
      const double theta = (1.0 + rt.nodes[static_cast<std::size_t>(m)]) * half_pi;
      fan.sx_.push_back(sp * std::cos(theta));
      fan.sy_.push_back(sp * std::sin(theta));
      fan.sz_.push_back(cp);
      fan.weight_.push_back(prefactor * sp * rp.weights[static_cast<std::size_t>(n)] *
                            rt.weights[static_cast<std::size_t>(m)]);
    }
  }
  return fan;
}

}  // namespace tetbiot
