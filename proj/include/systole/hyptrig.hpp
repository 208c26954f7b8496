#pragma once

// Closed-form hyperbolic trigonometry used by the constructions: lengths of
// hyperbolic isometries, right-angled pentagon relations, collar widths and
// the interior systoles of the extremal F- and Q-pieces.

namespace systole {

/// Length of a closed geodesic, in hyperbolic length units.
class GeodesicLength {
 public:
  GeodesicLength() = default;
  explicit GeodesicLength(double value);
  /// Admits 0, the encoding of a cusp/degenerate boundary.
  static GeodesicLength or_zero(double value);

  double value() const noexcept { return value_; }
  operator double() const noexcept { return value_; }

 private:
  double value_ = 0.0;
};

class CollarWidth {
 public:
  explicit CollarWidth(double value);
  double value() const noexcept { return value_; }
  operator double() const noexcept { return value_; }

 private:
  double value_;
};

/// Fenchel-Nielsen twist as a fraction of the glued curve's length, kept in
/// the window (-1/2, 1/2].
class TwistParam {
 public:
  TwistParam() = default;
  explicit TwistParam(double value) : value_(normalize(value)) {}
  static double normalize(double t);

  double value() const noexcept { return value_; }
  operator double() const noexcept { return value_; }

 private:
  double value_ = 0.0;
};

/// Constant of the cusped half-collar bound, used verbatim.
inline constexpr double kHalfCollarConstant = 1.319;
/// 4 * 1.319, the collar term in the doubling inequality.
inline constexpr double kDoublingConstant = 5.276;

/// 4 arcsinh(1): lower bound on the systole of surfaces where two systoles
/// meet twice.
double four_arcsinh_one() noexcept;

GeodesicLength trace_to_length(double trace);
double length_to_trace(double length) noexcept;

/// cosh(c) = sinh(a) sinh(b).
GeodesicLength right_pentagon_opposite(GeodesicLength a, GeodesicLength b);

/// Perpendicular of a cusped pentagon: sinh(d/2) sinh(alpha/4) = 1.
GeodesicLength cusp_perpendicular(GeodesicLength alpha);

struct CubicRoot {
  long double x;         // cosh(s/2), the unique root > 1
  long double residual;  // cubic evaluated at x
  double s;
};

/// Root of 2x^3 - 3x^2 - (cosh(b/2)+1)x - cosh(b/2) with x > 1.
CubicRoot fpiece_cubic_root(double b);
long double fpiece_cubic(long double x, double b) noexcept;

/// Interior systole of the extremal F-piece with two boundaries of length b.
GeodesicLength fpiece_max_systole(GeodesicLength b);

/// Interior systole of the extremal Q-piece, cosh(s/2) = cosh(b/6) + 1/2.
GeodesicLength qpiece_max_systole(GeodesicLength b);

CollarWidth collar_width_compact(GeodesicLength alpha);
CollarWidth half_collar_width_cusped(GeodesicLength alpha);

GeodesicLength delta1_from_alpha_eta(GeodesicLength alpha, GeodesicLength eta);

}  // namespace systole
