#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace systole {

/// 2x2 real matrix. Determinant +1 matrices act on the upper half-plane as
/// Moebius maps; traceless determinant -1 matrices encode geodesic lines and
/// act as the reflection z -> X(conj z).
template <class T>
struct BasicMat2 {
  T a = 1, b = 0, c = 0, d = 1;

  static constexpr BasicMat2 identity() { return {1, 0, 0, 1}; }

  template <class U>
  explicit constexpr operator BasicMat2<U>() const noexcept {
    return {static_cast<U>(a), static_cast<U>(b), static_cast<U>(c), static_cast<U>(d)};
  }

  T trace() const noexcept { return a + d; }
  T det() const noexcept { return a * d - b * c; }
  T frobenius_sq() const noexcept { return a * a + b * b + c * c + d * d; }
  T frobenius() const noexcept { return std::sqrt(frobenius_sq()); }

  /// Inverse, assuming det = +-1.
  BasicMat2 inverse() const noexcept {
    const T s = det() < 0 ? T(-1) : T(1);
    return {s * d, -s * b, -s * c, s * a};
  }

  BasicMat2 operator-() const noexcept { return {-a, -b, -c, -d}; }
  friend BasicMat2 operator*(const BasicMat2& x, const BasicMat2& y) noexcept {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend BasicMat2 operator*(T s, const BasicMat2& x) noexcept { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
  friend BasicMat2 operator+(const BasicMat2& x, const BasicMat2& y) noexcept {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend BasicMat2 operator-(const BasicMat2& x, const BasicMat2& y) noexcept {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
};

using Mat2 = BasicMat2<double>;
/// Quad precision, for constructions that cancel large products.
using Mat2Q = BasicMat2<__float128>;

double frobenius_distance(const Mat2& x, const Mat2& y) noexcept;
/// min(|W - I|, |W + I|) in Frobenius norm.
double distance_to_pm_identity(const Mat2& w) noexcept;

std::complex<double> mobius(const Mat2& m, std::complex<double> z) noexcept;

/// Hyperbolic distance from i to m(i); cosh d = |m|_F^2 / 2 for det 1.
double displacement_from_i(const Mat2& m) noexcept;

/// Translation by `length` along the imaginary axis, upward.
Mat2 axis_translation(double length) noexcept;
/// Element mapping i to z (upper half-plane).
Mat2 move_i_to(std::complex<double> z);

// Minkowski model on traceless matrices X = [[x, y+z], [y-z, -x]] with the
// form <X, Y> = tr(XY)/2 of signature (2,1). Unit spacelike vectors are
// geodesic lines, future unit timelike vectors are points.
template <class T>
using BasicVec3 = std::array<T, 3>;
using Vec3 = BasicVec3<double>;
using Vec3Q = BasicVec3<__float128>;

template <class T>
BasicMat2<T> from_vec(const BasicVec3<T>& v) noexcept {
  return {v[0], v[1] + v[2], v[1] - v[2], -v[0]};
}

template <class T>
BasicVec3<T> to_vec(const BasicMat2<T>& m) noexcept {
  return {(m.a - m.d) / 2, (m.b + m.c) / 2, (m.b - m.c) / 2};
}

template <class T>
T minkowski(const BasicVec3<T>& u, const BasicVec3<T>& v) noexcept {
  return u[0] * v[0] + u[1] * v[1] - u[2] * v[2];
}

/// Vector orthogonal to both u and v for the Minkowski form.
template <class T>
BasicVec3<T> minkowski_cross(const BasicVec3<T>& u, const BasicVec3<T>& v) noexcept {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], -(u[0] * v[1] - u[1] * v[0])};
}

/// Action of an orientation-preserving isometry on vectors.
template <class T>
BasicVec3<T> act(const BasicMat2<T>& g, const BasicVec3<T>& v) noexcept {
  return to_vec(g * from_vec(v) * g.inverse());
}

/// Rescale to <v,v> = +-1; timelike vectors are put on the future sheet.
Vec3 normalize_minkowski(const Vec3& v);

/// Point of H^2 represented by the upper half-plane value z.
Vec3 point_from_z(std::complex<double> z);
std::complex<double> z_from_point(const Vec3& p);
double point_distance(const Vec3& p, const Vec3& q) noexcept;
/// Reflection of a point in the line with unit normal n.
Vec3 reflect(const Vec3& n, const Vec3& p) noexcept;
/// Point at fraction t of the geodesic segment from p to q.
Vec3 geodesic_point(const Vec3& p, const Vec3& q, double t) noexcept;

}  // namespace systole
