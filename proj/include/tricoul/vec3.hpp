#ifndef TRICOUL_VEC3_HPP
#define TRICOUL_VEC3_HPP

#include <cmath>
#include <complex>

namespace tricoul {

using Complex = std::complex<double>;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// Unit vector; caller guarantees v != 0.
inline Vec3 hat(const Vec3& v) { return v / norm(v); }

// 3-vector with complex components, used for the shifted coordinates.
struct CVec3 {
  Complex x{}, y{}, z{};

  CVec3() = default;
  CVec3(Complex x_, Complex y_, Complex z_) : x(x_), y(y_), z(z_) {}
  CVec3(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}

  CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  CVec3 operator*(Complex s) const { return {x * s, y * s, z * s}; }
};

inline CVec3 operator*(Complex s, const CVec3& v) { return v * s; }

// Bilinear dot product, no conjugation.
inline Complex cdot(const CVec3& a, const CVec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Complex cdot(const CVec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

}  // namespace tricoul

#endif
