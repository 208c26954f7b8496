#include "systole/mat2.hpp"

#include <algorithm>

#include "systole/error.hpp"

namespace systole {

double frobenius_distance(const Mat2& x, const Mat2& y) noexcept {
  return (x - y).frobenius();
}

double distance_to_pm_identity(const Mat2& w) noexcept {
  const Mat2 id = Mat2::identity();
  return std::min(frobenius_distance(w, id), frobenius_distance(w, -id));
}

std::complex<double> mobius(const Mat2& m, std::complex<double> z) noexcept {
  return (m.a * z + m.b) / (m.c * z + m.d);
}

double displacement_from_i(const Mat2& m) noexcept {
  const double x = 0.5 * m.frobenius_sq();
  return x <= 1.0 ? 0.0 : std::acosh(x);
}

Mat2 axis_translation(double length) noexcept {
  const double e = std::exp(0.5 * length);
  return {e, 0.0, 0.0, 1.0 / e};
}

Mat2 move_i_to(std::complex<double> z) {
  if (!(z.imag() > 0.0)) throw Error(Errc::domain, "point not in the upper half-plane");
  const double r = std::sqrt(z.imag());
  return {r, z.real() / r, 0.0, 1.0 / r};
}

Vec3 normalize_minkowski(const Vec3& v) {
  const double q = minkowski(v, v);
  if (q == 0.0 || !std::isfinite(q)) throw Error(Errc::domain, "null vector cannot be normalized");
  const double s = 1.0 / std::sqrt(std::fabs(q));
  Vec3 w{v[0] * s, v[1] * s, v[2] * s};
  // Future sheet: matrix entry c = y - z < 0.
  if (q < 0.0 && w[1] - w[2] > 0.0) w = {-w[0], -w[1], -w[2]};
  return w;
}

Vec3 point_from_z(std::complex<double> z) {
  const double u = z.real();
  const double v = z.imag();
  if (!(v > 0.0)) throw Error(Errc::domain, "point not in the upper half-plane");
  return to_vec(Mat2{-u / v, (u * u + v * v) / v, -1.0 / v, u / v});
}

std::complex<double> z_from_point(const Vec3& p) {
  const Mat2 m = from_vec(p);
  return {m.a / m.c, -1.0 / m.c};
}

double point_distance(const Vec3& p, const Vec3& q) noexcept {
  const double x = -minkowski(p, q);
  return x <= 1.0 ? 0.0 : std::acosh(x);
}

Vec3 reflect(const Vec3& n, const Vec3& p) noexcept {
  const double s = 2.0 * minkowski(p, n);
  return {p[0] - s * n[0], p[1] - s * n[1], p[2] - s * n[2]};
}

Vec3 geodesic_point(const Vec3& p, const Vec3& q, double t) noexcept {
  const double d = point_distance(p, q);
  if (d < 1e-15) return p;
  const double sp = std::sinh((1.0 - t) * d) / std::sinh(d);
  const double sq = std::sinh(t * d) / std::sinh(d);
  return {sp * p[0] + sq * q[0], sp * p[1] + sq * q[1], sp * p[2] + sq * q[2]};
}

}  // namespace systole
