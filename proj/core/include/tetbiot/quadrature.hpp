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
#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

#include "tetbiot/vec3.hpp"

namespace tetbiot {

inline constexpr int kMaxGaussOrder = 512;

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Throws std::invalid_argument unless 1 <= order <= kMaxGaussOrder.
GaussRule gauss_legendre(int order);

/// Scale applied to sin(phi_n) w_n w_m in the fan weights. The 1/(4 pi) of
/// the spherical form of the Biot-Savart integral times the Jacobian
/// (pi/2)^2 of mapping [-1,1]^2 onto (phi, theta) in [0,pi]^2. The value is
/// pinned by the direct-quadrature calibration test in tests/unit.
inline constexpr double kFanPrefactor = std::numbers::pi / 16.0;

/// Precomputed product rule over directions: for n < n_phi, m < n_theta the
/// entry k = n * n_theta + m holds
///   s_k = (sin phi_n cos theta_m, sin phi_n sin theta_m, cos phi_n)
///   weight_k = prefactor * sin phi_n * w_n * w_m
/// with phi_n = (1 + t_n) pi/2 and theta_m = (1 + t_m) pi/2. Theta covers only
/// [0, pi]; each direction stands for a full line.
class QuadFan {
 public:
  QuadFan() = default;

  int n_phi() const { return n_phi_; }
  int n_theta() const { return n_theta_; }
  std::size_t size() const { return weight_.size(); }
  double prefactor() const { return prefactor_; }

  Vec3 direction(std::size_t k) const { return {sx_[k], sy_[k], sz_[k]}; }
  double weight(std::size_t k) const { return weight_[k]; }

  /// Flat tables, one entry per direction.
  const std::vector<double>& sx() const { return sx_; }
  const std::vector<double>& sy() const { return sy_; }
  const std::vector<double>& sz() const { return sz_; }
  const std::vector<double>& weights() const { return weight_; }

  /// sin(phi_n) and cos(phi_n), one entry per row of n_theta directions.
  const std::vector<double>& row_sin() const { return row_sin_; }
  const std::vector<double>& row_cos() const { return row_cos_; }

  /// sin(phi_n) w_n w_m without the prefactor (for measure checks).
  double raw_weight(std::size_t k) const { return weight_[k] / prefactor_; }

 private:
  friend QuadFan build_fan(int n_phi, int n_theta, double prefactor);

  int n_phi_ = 0;
  int n_theta_ = 0;
  double prefactor_ = kFanPrefactor;
  std::vector<double> sx_, sy_, sz_, weight_;
  std::vector<double> row_sin_, row_cos_;
};

/// The only place trigonometric functions are evaluated for a velocity
/// computation. Throws std::invalid_argument for orders out of range.
QuadFan build_fan(int n_phi, int n_theta, double prefactor = kFanPrefactor);

}  // namespace tetbiot
