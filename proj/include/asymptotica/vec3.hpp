#pragma once

#include <array>
#include <cmath>
#include <ostream>
#include <utility>

namespace asym {

template <class T>
struct Vec3 {
  std::array<T, 3> v{};

  Vec3() = default;
  Vec3(T a, T b, T c) : v{std::move(a), std::move(b), std::move(c)} {}

  T& operator[](std::size_t i) { return v[i]; }
  const T& operator[](std::size_t i) const { return v[i]; }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
  friend Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
  template <class S>
  friend Vec3 operator*(const S& s, const Vec3& a) {
    return {s * a[0], s * a[1], s * a[2]};
  }
  template <class S>
  friend Vec3 operator*(const Vec3& a, const S& s) {
    return {a[0] * s, a[1] * s, a[2] * s};
  }
  template <class S>
  friend Vec3 operator/(const Vec3& a, const S& s) {
    return {a[0] / s, a[1] / s, a[2] / s};
  }
};

using Vec3d = Vec3<double>;

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3d& a) { return std::sqrt(dot(a, a)); }

/// Componentwise map, e.g. taking values or derivatives of a jet vector.
template <class T, class F>
auto map(const Vec3<T>& a, F&& f) -> Vec3<decltype(f(a[0]))> {
  return {f(a[0]), f(a[1]), f(a[2])};
}

inline std::ostream& operator<<(std::ostream& os, const Vec3d& a) {
  return os << '(' << a[0] << ", " << a[1] << ", " << a[2] << ')';
}

}  // namespace asym
