#include "systole/hyptrig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "systole/error.hpp"

namespace systole {

namespace {

std::string describe(const char* what, double v) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (got " << v << ")";
  return os.str();
}

}  // namespace

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::domain: return "domain";
    case Errc::non_hyperbolic: return "non_hyperbolic";
    case Errc::no_such_polygon: return "no_such_polygon";
    case Errc::invalid_spec: return "invalid_spec";
    case Errc::disconnected: return "disconnected";
    case Errc::length_mismatch: return "length_mismatch";
    case Errc::cusp_glued: return "cusp_glued";
    case Errc::non_hyperbolic_signature: return "non_hyperbolic_signature";
    case Errc::separating_curve: return "separating_curve";
    case Errc::invalid_curve: return "invalid_curve";
    case Errc::signature_mismatch: return "signature_mismatch";
    case Errc::unsupported: return "unsupported";
    case Errc::io: return "io";
    case Errc::parse: return "parse";
    case Errc::precondition: return "precondition";
  }
  return "unknown";
}

GeodesicLength::GeodesicLength(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(Errc::domain, describe("geodesic length must be positive and finite", value));
  }
}

GeodesicLength GeodesicLength::or_zero(double value) {
  if (value == 0.0) {
    GeodesicLength g;
    g.value_ = 0.0;
    return g;
  }
  return GeodesicLength(value);
}

CollarWidth::CollarWidth(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(Errc::domain, describe("collar width must be positive", value));
  }
}

double TwistParam::normalize(double t) {
  if (!std::isfinite(t)) {
    throw Error(Errc::domain, describe("twist must be finite", t));
  }
  double r = t - std::ceil(t - 0.5);
  // ceil can land exactly on the excluded endpoint through rounding.
  if (r <= -0.5) r += 1.0;
  if (r > 0.5) r -= 1.0;
  return r;
}

double four_arcsinh_one() noexcept { return 4.0 * std::asinh(1.0); }

GeodesicLength trace_to_length(double trace) {
  const double t = std::fabs(trace);
  if (!(t > 2.0)) {
    throw Error(Errc::non_hyperbolic,
                describe(t == 2.0 ? "parabolic element" : "elliptic element", trace));
  }
  // acosh(x) = log1p(y + sqrt(y (y + 2))) with y = x - 1 keeps precision near 1.
  const double y = 0.5 * t - 1.0;
  return GeodesicLength(2.0 * std::log1p(y + std::sqrt(y * (y + 2.0))));
}

double length_to_trace(double length) noexcept { return 2.0 * std::cosh(0.5 * length); }

GeodesicLength right_pentagon_opposite(GeodesicLength a, GeodesicLength b) {
  const double p = std::sinh(a.value()) * std::sinh(b.value());
  // Products within rounding of 1 are the degenerate pentagon.
  if (p < 1.0 - 1e-14) {
    throw Error(Errc::no_such_polygon, describe("sinh(a) sinh(b) < 1: no right-angled pentagon", p));
  }
  if (p <= 1.0) return GeodesicLength::or_zero(0.0);
  return GeodesicLength::or_zero(std::acosh(p));
}

GeodesicLength cusp_perpendicular(GeodesicLength alpha) {
  if (!(alpha.value() > 0.0)) {
    throw Error(Errc::domain, describe("cusp perpendicular needs alpha > 0", alpha.value()));
  }
  return GeodesicLength(2.0 * std::asinh(1.0 / std::sinh(0.25 * alpha.value())));
}

long double fpiece_cubic(long double x, double b) noexcept {
  const long double c = std::cosh(0.5L * static_cast<long double>(b));
  return ((2.0L * x - 3.0L) * x - (c + 1.0L)) * x - c;
}

CubicRoot fpiece_cubic_root(double b) {
  if (!(b >= 0.0) || !std::isfinite(b)) {
    throw Error(Errc::domain, describe("F-piece boundary length must be >= 0", b));
  }
  const long double c = std::cosh(0.5L * static_cast<long double>(b));
  auto f = [&](long double x) { return ((2.0L * x - 3.0L) * x - (c + 1.0L)) * x - c; };
  auto df = [&](long double x) { return (6.0L * x - 6.0L) * x - (c + 1.0L); };

  // f(1) = -2 - 2c < 0 and f is convex on (1/2, inf), so [1, c + 3] brackets
  // exactly one root.
  long double lo = 1.0L;
  long double hi = c + 3.0L;
  while (hi - lo > 1e-12L * hi) {
    const long double mid = 0.5L * (lo + hi);
    if (f(mid) > 0.0L) hi = mid; else lo = mid;
  }
  long double x = 0.5L * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    const long double step = f(x) / df(x);
    x -= step;
    if (std::fabs(step) <= std::numeric_limits<long double>::epsilon() * x) break;
  }
  CubicRoot root;
  root.x = x;
  root.residual = f(x);
  root.s = static_cast<double>(2.0L * std::acosh(x));
  return root;
}

GeodesicLength fpiece_max_systole(GeodesicLength b) {
  return GeodesicLength(fpiece_cubic_root(b.value()).s);
}

GeodesicLength qpiece_max_systole(GeodesicLength b) {
  if (!(b.value() >= 0.0)) {
    throw Error(Errc::domain, describe("Q-piece boundary length must be >= 0", b.value()));
  }
  return GeodesicLength(2.0 * std::acosh(std::cosh(b.value() / 6.0) + 0.5));
}

CollarWidth collar_width_compact(GeodesicLength alpha) {
  return CollarWidth(0.25 * alpha.value());
}

CollarWidth half_collar_width_cusped(GeodesicLength alpha) {
  const double a = alpha.value();
  if (a < four_arcsinh_one() * (1.0 - 1e-14)) {
    throw Error(Errc::domain,
                describe("half-collar bound requires alpha >= 4 arcsinh(1)", a));
  }
  const double quarter = 0.25 * a;
  const double subtractive = quarter - std::asinh(1.0 / std::sinh(quarter));
  return CollarWidth(std::min(quarter, std::max(kHalfCollarConstant, subtractive)));
}

GeodesicLength delta1_from_alpha_eta(GeodesicLength alpha, GeodesicLength eta) {
  const double a = alpha.value();
  const double e = eta.value();
  if (!(a > 0.0)) throw Error(Errc::domain, describe("delta1 needs alpha > 0", a));
  if (e < a * (1.0 - 1e-14)) {
    throw Error(Errc::domain, describe("delta1 needs eta >= alpha", e));
  }
  const double ratio = (std::cosh(0.5 * a) + std::cosh(0.5 * e)) / std::sinh(0.5 * a);
  const double radicand = ratio * ratio - 1.0;
  if (radicand < 0.0) {
    throw Error(Errc::domain, describe("negative radicand in delta1", radicand));
  }
  return GeodesicLength(2.0 * std::asinh(std::sqrt(radicand)));
}

}  // namespace systole
