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

#include <cmath>

namespace tetbiot {

/// Three-component vector. The scalar is a template parameter so the inner
/// velocity kernels can be instantiated with an instrumented number type;
/// everything outside the kernels uses the `Vec3` alias.
template <typename T>
struct BasicVec3 {
  T x{};
  T y{};
  T z{};

  constexpr BasicVec3() = default;
  constexpr BasicVec3(T x_, T y_, T z_) : x(x_), y(y_), z(z_) {}

  template <typename U>
  constexpr explicit BasicVec3(const BasicVec3<U>& other)
      : x(T(other.x)), y(T(other.y)), z(T(other.z)) {}

  constexpr BasicVec3& operator+=(const BasicVec3& b) {
    x += b.x;
    y += b.y;
    z += b.z;
    return *this;
  }
  constexpr BasicVec3& operator-=(const BasicVec3& b) {
    x -= b.x;
    y -= b.y;
    z -= b.z;
    return *this;
  }
  constexpr BasicVec3& operator*=(const T& s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr bool operator==(const BasicVec3&, const BasicVec3&) = default;
};

using Vec3 = BasicVec3<double>;

template <typename T>
constexpr BasicVec3<T> operator+(const BasicVec3<T>& a, const BasicVec3<T>& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

template <typename T>
constexpr BasicVec3<T> operator-(const BasicVec3<T>& a, const BasicVec3<T>& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

template <typename T>
constexpr BasicVec3<T> operator-(const BasicVec3<T>& a) {
  return {-a.x, -a.y, -a.z};
}

template <typename T>
constexpr BasicVec3<T> operator*(const T& s, const BasicVec3<T>& a) {
  return {s * a.x, s * a.y, s * a.z};
}

template <typename T>
constexpr BasicVec3<T> operator*(const BasicVec3<T>& a, const T& s) {
  return {a.x * s, a.y * s, a.z * s};
}

template <typename T>
constexpr T dot(const BasicVec3<T>& a, const BasicVec3<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <typename T>
constexpr BasicVec3<T> cross(const BasicVec3<T>& a, const BasicVec3<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <typename T>
constexpr T norm2(const BasicVec3<T>& a) {
  return dot(a, a);
}

// Not used on the per-ray path.
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

inline bool is_finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

}  // namespace tetbiot
