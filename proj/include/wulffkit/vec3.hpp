#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <ostream>

namespace wulffkit {

/// Small fixed-size 3-vector used throughout the geometry code.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  constexpr Vec3& operator/=(double s) {
    x /= s;
    y /= s;
    z /= s;
    return *this;
  }
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(Vec3 a, double s) { return a /= s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
constexpr double norm2(const Vec3& a) { return dot(a, a); }
inline Vec3 normalized(const Vec3& a) { return a / norm(a); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }
inline double max_abs_diff(const Vec3& a, const Vec3& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
}

/// Row-major 3x3 matrix; rows are stored as vectors.
struct Mat3 {
  std::array<Vec3, 3> rows{};

  Vec3 operator*(const Vec3& v) const { return {dot(rows[0], v), dot(rows[1], v), dot(rows[2], v)}; }
  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < 3; ++k) s += rows[i][k] * o.rows[k][j];
        r.rows[i][j] = s;
      }
    return r;
  }
  double determinant() const { return dot(rows[0], cross(rows[1], rows[2])); }
  Mat3 transposed() const {
    Mat3 t;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) t.rows[i][j] = rows[j][i];
    return t;
  }
  /// Inverse via the adjugate. Caller checks the determinant.
  Mat3 inverse() const {
    const double det = determinant();
    const Vec3 c0 = cross(rows[1], rows[2]);
    const Vec3 c1 = cross(rows[2], rows[0]);
    const Vec3 c2 = cross(rows[0], rows[1]);
    Mat3 inv;
    inv.rows = {Vec3{c0.x, c1.x, c2.x} / det, Vec3{c0.y, c1.y, c2.y} / det, Vec3{c0.z, c1.z, c2.z} / det};
    return inv;
  }
  static Mat3 identity() { return Mat3{{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}}; }
  /// Matrix whose columns are the given vectors.
  static Mat3 from_columns(const Vec3& a, const Vec3& b, const Vec3& c) {
    return Mat3{{Vec3{a.x, b.x, c.x}, Vec3{a.y, b.y, c.y}, Vec3{a.z, b.z, c.z}}};
  }
};

/// Integer triple used for lattice cell coordinates.
struct IVec3 {
  int a = 0;
  int b = 0;
  int c = 0;

  constexpr int operator[](std::size_t i) const { return i == 0 ? a : (i == 1 ? b : c); }
  constexpr int& operator[](std::size_t i) { return i == 0 ? a : (i == 1 ? b : c); }
  friend constexpr IVec3 operator+(IVec3 l, const IVec3& r) { return {l.a + r.a, l.b + r.b, l.c + r.c}; }
  friend constexpr IVec3 operator-(IVec3 l, const IVec3& r) { return {l.a - r.a, l.b - r.b, l.c - r.c}; }
  friend constexpr IVec3 operator-(const IVec3& v) { return {-v.a, -v.b, -v.c}; }
  friend constexpr auto operator<=>(const IVec3&, const IVec3&) = default;
};

}  // namespace wulffkit
