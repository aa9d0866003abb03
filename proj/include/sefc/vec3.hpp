#pragma once

#include <cmath>

namespace sefc {

// 3D vector. Units depend on context: meters, m/s or m/s^2.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(const Vec3& a, double s) { return {a.x * s, a.y * s, a.z * s}; }
  friend Vec3 operator*(double s, const Vec3& a) { return a * s; }
  friend Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
  friend bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
  friend bool operator!=(const Vec3& a, const Vec3& b) { return !(a == b); }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline bool all_finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// Scales v down to |v| == max_norm when it is longer; direction preserved.
inline Vec3 clamp_norm(const Vec3& v, double max_norm) {
  const double n = norm(v);
  if (n > max_norm && n > 0.0) return v * (max_norm / n);
  return v;
}

// Unit vector along v; falls back to +x for a (near-)zero vector.
inline Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  if (n < 1e-12) return {1.0, 0.0, 0.0};
  return v / n;
}

// Axis-aligned box, min <= max componentwise.
struct Box3 {
  Vec3 min{0.0, 0.0, 0.0};
  Vec3 max{1500.0, 1500.0, 300.0};

  bool contains(const Vec3& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z &&
           p.z <= max.z;
  }
  Vec3 extent() const { return max - min; }
  Vec3 center() const { return {(min.x + max.x) / 2, (min.y + max.y) / 2, (min.z + max.z) / 2}; }
};

}  // namespace sefc
