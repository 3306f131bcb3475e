#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace ctorque {

/// Dense 2x2 matrix, row-major. Just enough algebra for the Green's-function
/// construction.
template <class T>
struct Mat2 {
  std::array<T, 4> a{};

  static constexpr Mat2 identity() { return {{T(1), T(0), T(0), T(1)}}; }
  static constexpr Mat2 diag(T d0, T d1) { return {{d0, T(0), T(0), d1}}; }

  constexpr T& operator()(int i, int j) { return a[2 * i + j]; }
  constexpr const T& operator()(int i, int j) const { return a[2 * i + j]; }

  constexpr T det() const { return a[0] * a[3] - a[1] * a[2]; }
  constexpr Mat2 transpose() const { return {{a[0], a[2], a[1], a[3]}}; }

  friend constexpr Mat2 operator+(const Mat2& l, const Mat2& r) {
    return {{l.a[0] + r.a[0], l.a[1] + r.a[1], l.a[2] + r.a[2], l.a[3] + r.a[3]}};
  }
  friend constexpr Mat2 operator-(const Mat2& l, const Mat2& r) {
    return {{l.a[0] - r.a[0], l.a[1] - r.a[1], l.a[2] - r.a[2], l.a[3] - r.a[3]}};
  }
  friend constexpr Mat2 operator-(const Mat2& m) { return {{-m.a[0], -m.a[1], -m.a[2], -m.a[3]}}; }
  friend constexpr Mat2 operator*(const Mat2& l, const Mat2& r) {
    return {{l.a[0] * r.a[0] + l.a[1] * r.a[2], l.a[0] * r.a[1] + l.a[1] * r.a[3],
             l.a[2] * r.a[0] + l.a[3] * r.a[2], l.a[2] * r.a[1] + l.a[3] * r.a[3]}};
  }
  friend constexpr Mat2 operator*(const T& s, const Mat2& m) {
    return {{s * m.a[0], s * m.a[1], s * m.a[2], s * m.a[3]}};
  }
};

/// Largest element magnitude.
template <class T>
auto max_abs(const Mat2<T>& m) {
  using std::abs;
  auto out = abs(m.a[0]);
  for (const auto& x : m.a) out = std::max(out, abs(x));
  return out;
}

}  // namespace ctorque
