#include <cmath>

#include "doctest.h"
#include "systole/error.hpp"
#include "systole/hyptrig.hpp"

using namespace systole;

namespace {

// Plain bisection on [lo, hi]; independent of the solver's bracket and Newton polish.
long double bisect_cubic(double b, long double lo, long double hi) {
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    if (fpiece_cubic(mid, b) > 0) hi = mid; else lo = mid;
  }
  return 0.5L * (lo + hi);
}

}  // namespace

TEST_CASE("trace and length are inverse") {
  CHECK(trace_to_length(2.0 * std::cosh(1.0)).value() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(trace_to_length(-6.0).value() == doctest::Approx(2.0 * std::acosh(3.0)).epsilon(1e-14));
  CHECK(2.0 * std::acosh(3.0) == doctest::Approx(four_arcsinh_one()).epsilon(1e-14));
  for (double l : {1e-6, 0.01, 0.5, 2.0, 7.0, 30.0})
    CHECK(trace_to_length(length_to_trace(l)).value() == doctest::Approx(l).epsilon(1e-9));
}

TEST_CASE("non-hyperbolic traces are rejected") {
  CHECK_THROWS_AS(trace_to_length(2.0), Error);
  CHECK_THROWS_AS(trace_to_length(-1.5), Error);
  try {
    trace_to_length(1.0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_hyperbolic);
  }
}

TEST_CASE("twist window") {
  CHECK(TwistParam(0.5).value() == 0.5);
  CHECK(TwistParam(-0.5).value() == 0.5);
  CHECK(TwistParam(1.25).value() == doctest::Approx(0.25));
  CHECK(TwistParam(-0.75).value() == doctest::Approx(0.25));
  CHECK_THROWS_AS(TwistParam(NAN), Error);
}

TEST_CASE("right pentagon") {
  CHECK(right_pentagon_opposite(GeodesicLength(std::asinh(1.0)), GeodesicLength(std::asinh(1.0))).value() ==
        doctest::Approx(0.0).epsilon(1e-7));
  CHECK(right_pentagon_opposite(GeodesicLength(std::asinh(2.0)), GeodesicLength(std::asinh(1.0))).value() ==
        doctest::Approx(std::acosh(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(right_pentagon_opposite(GeodesicLength(0.1), GeodesicLength(0.1)), Error);
}

TEST_CASE("cusp perpendicular") {
  CHECK(cusp_perpendicular(GeodesicLength(4.0)).value() ==
        doctest::Approx(2.0 * std::asinh(1.0 / std::sinh(1.0))).epsilon(1e-13));
  CHECK(cusp_perpendicular(GeodesicLength(four_arcsinh_one())).value() ==
        doctest::Approx(2.0 * std::asinh(1.0)).epsilon(1e-13));
  CHECK(cusp_perpendicular(GeodesicLength(40.0)).value() < 1e-3);
  for (double a = 0.5; a < 20.0; a += 0.75) {
    const double d = cusp_perpendicular(GeodesicLength(a));
    CHECK(std::sinh(d / 2) * std::sinh(a / 4) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("F-piece cubic against bisection") {
  const CubicRoot r0 = fpiece_cubic_root(0.0);
  // Zero boundary: 2x^3 - 3x^2 - 2x - 1 = 0, root near 2.0922.
  CHECK(static_cast<double>(r0.x) == doctest::Approx(2.09219).epsilon(1e-5));
  CHECK(r0.s == doctest::Approx(2.0 * std::acosh(2.0921935)).epsilon(1e-6));
  CHECK(static_cast<double>(r0.x) == doctest::Approx(static_cast<double>(bisect_cubic(0.0, 1.0L, 10.0L))).epsilon(1e-14));
  for (double b : {0.5, 4.0, 9.0, 17.5}) {
    const CubicRoot r = fpiece_cubic_root(b);
    const long double oracle = bisect_cubic(b, 1.0L, std::cosh(b / 2) + 3.0L);
    CHECK(static_cast<double>(r.x) == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-13));
    CHECK(std::fabs(static_cast<double>(r.residual)) < 1e-10);
    CHECK(r.s > b / 2);
  }
  CHECK(fpiece_cubic_root(4.0).s > 2.0);
  CHECK_THROWS_AS(fpiece_cubic_root(-1.0), Error);
}

TEST_CASE("Q-piece closed form") {
  CHECK(qpiece_max_systole(GeodesicLength::or_zero(0.0)).value() ==
        doctest::Approx(2.0 * std::acosh(1.5)).epsilon(1e-14));
  const double s6 = qpiece_max_systole(GeodesicLength(6.0));
  CHECK(s6 == doctest::Approx(2.0 * std::acosh(std::cosh(1.0) + 0.5)).epsilon(1e-14));
  CHECK(s6 == doctest::Approx(2.68296).epsilon(1e-5));
  CHECK(s6 > 2.0);
}

TEST_CASE("collar widths") {
  CHECK(collar_width_compact(GeodesicLength(4.0)).value() == 1.0);
  CHECK(collar_width_compact(GeodesicLength(3.06)).value() == doctest::Approx(0.765));
  CHECK(collar_width_compact(GeodesicLength(1e-6)).value() == doctest::Approx(2.5e-7));

  const double a0 = four_arcsinh_one();
  CHECK(half_collar_width_cusped(GeodesicLength(a0)).value() == doctest::Approx(a0 / 4).epsilon(1e-14));
  CHECK(half_collar_width_cusped(GeodesicLength(6.0)).value() == doctest::Approx(1.319).epsilon(1e-14));
  CHECK(kDoublingConstant == doctest::Approx(4.0 * kHalfCollarConstant).epsilon(1e-15));
  CHECK(half_collar_width_cusped(GeodesicLength(8.0)).value() ==
        doctest::Approx(2.0 - std::asinh(1.0 / std::sinh(2.0))).epsilon(1e-14));
  CHECK(half_collar_width_cusped(GeodesicLength(8.0)).value() == doctest::Approx(1.7276).epsilon(1e-4));
  CHECK_THROWS_AS(half_collar_width_cusped(GeodesicLength(3.0)), Error);
  for (double a = a0; a < 30.0; a += 0.37)
    CHECK(half_collar_width_cusped(GeodesicLength(a)).value() >= std::min(a / 4, 1.319) - 1e-15);
}

TEST_CASE("delta1") {
  const double a0 = four_arcsinh_one();
  CHECK(delta1_from_alpha_eta(GeodesicLength(a0), GeodesicLength(a0)).value() / 2 ==
        doctest::Approx(1.3845).epsilon(1e-4));
  const double far = delta1_from_alpha_eta(GeodesicLength(40.0), GeodesicLength(40.0)).value() / 2;
  CHECK(far >= std::asinh(std::sqrt(3.0)));
  const double mid = delta1_from_alpha_eta(GeodesicLength(6.0), GeodesicLength(6.0)).value() / 2;
  CHECK(mid > std::asinh(std::sqrt(3.0)));
  CHECK(far == doctest::Approx(std::asinh(std::sqrt(3.0))).epsilon(1e-6));
  CHECK(delta1_from_alpha_eta(GeodesicLength(4.0), GeodesicLength(5.0)).value() >
        delta1_from_alpha_eta(GeodesicLength(4.0), GeodesicLength(4.5)).value());
  CHECK_THROWS_AS(delta1_from_alpha_eta(GeodesicLength(4.0), GeodesicLength(3.0)), Error);
}
