#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "systole/engine.hpp"
#include "systole/builders.hpp"
#include "systole/error.hpp"
#include "systole/fuchsian.hpp"

using namespace systole;

namespace {

double max_trace_error(const Representation& r) {
  double worst = 0.0;
  for (std::size_t c = 0; c < r.curve_words.size(); ++c) {
    const double tr = std::fabs(evaluate(r, r.curve_words[c]).trace());
    worst = std::max(worst, std::fabs(tr - r.curve_trace(static_cast<int>(c))));
  }
  return worst;
}

}  // namespace

TEST_CASE("pants lines meet at the right angles") {
  const std::array<double, 3> l = {2.0, 2.5, 3.0};
  const auto t = detail::pants_lines(l);
  auto lower = [](const Vec3Q& v) {
    return Vec3{static_cast<double>(v[0]), static_cast<double>(v[1]), static_cast<double>(v[2])};
  };
  for (int i = 0; i < 3; ++i) {
    const Vec3 ti = lower(t[i]);
    CHECK(minkowski(ti, ti) == doctest::Approx(1.0).epsilon(1e-14));
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const Vec3 tj = lower(t[j]);
    const Vec3 tk = lower(t[k]);
    CHECK(minkowski(tj, tk) == doctest::Approx(-std::cosh(l[i] / 2)).epsilon(1e-13));
  }
  Mat2Q prod = Mat2Q::identity();
  for (int s = 2; s >= 0; --s) prod = prod * detail::boundary_element(t, s);
  CHECK(distance_to_pm_identity(Mat2(prod)) < 1e-12);
  for (int s = 0; s < 3; ++s)
    CHECK(std::fabs(static_cast<double>(detail::boundary_element(t, s).trace())) ==
          doctest::Approx(2.0 * std::cosh(l[s] / 2)).epsilon(1e-13));
}

TEST_CASE("genus 2 with equal lengths") {
  const Representation r = fn_to_generators(make_genus2({2, 2, 2}));
  CHECK(relator_residual(r) < 1e-8);
  CHECK(r.curve_words.size() == 3);
  for (std::size_t c = 0; c < 3; ++c)
    CHECK(std::fabs(evaluate(r, r.curve_words[c]).trace()) == doctest::Approx(2.0 * std::cosh(1.0)).epsilon(1e-12));
  for (const Mat2& g : r.generators) CHECK(g.det() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cusped Q-piece") {
  const Representation r = fn_to_generators(make_qpiece(3.0, 0.0));
  CHECK(relator_residual(r) < 1e-8);
  REQUIRE(r.cusp_words.size() == 1);
  CHECK(std::fabs(evaluate(r, r.cusp_words[0]).trace()) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::fabs(evaluate(r, r.curve_words[0]).trace()) == doctest::Approx(2.0 * std::cosh(1.5)).epsilon(1e-12));
}

TEST_CASE("open geodesic boundary is unsupported") {
  try {
    fn_to_generators(make_qpiece(3.0, 2.0));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unsupported);
  }
}

TEST_CASE("random specs meet the representation contract") {
  for (const char* fam : {"genus2", "genus3", "cusped12"})
    for (int seed = 1; seed <= 6; ++seed) {
      const Representation r = fn_to_generators(random_spec(fam, seed));
      CHECK(relator_residual(r) < 1e-8);
      CHECK(max_trace_error(r) < 1e-9);
      for (const Word& w : r.cusp_words) CHECK(std::fabs(evaluate(r, w).trace()) == doctest::Approx(2.0).epsilon(1e-9));
    }
}

TEST_CASE("relator residual: trivial and perturbed") {
  Representation id;
  id.generators = {Mat2::identity(), Mat2::identity()};
  CHECK(relator_residual(id) == 0.0);
  Representation r = fn_to_generators(make_genus2({2, 2.5, 3}, {0.1, -0.2, 0.3}));
  CHECK(relator_residual(r) < 1e-8);
  r.generators[0].b += 1e-3;
  CHECK(relator_residual(r) > 1e-4);
}

TEST_CASE("conjugation keeps every word trace") {
  const Representation r = fn_to_generators(random_spec("genus2", 11));
  const Representation c = conjugate(r, Mat2{2.0, 0.3, 0.5, 0.575});
  CHECK(relator_residual(c) < 1e-8);
  for (const Word& w : r.curve_words)
    CHECK(evaluate(c, w).trace() == doctest::Approx(evaluate(r, w).trace()).epsilon(1e-9));
  const Word w = {1, 2, -1, 3, 3, -2};
  CHECK(evaluate(c, w).trace() == doctest::Approx(evaluate(r, w).trace()).epsilon(1e-9));
}

TEST_CASE("twists move non-pants traces only") {
  const Representation a = fn_to_generators(make_genus2({2, 2.5, 3}, {0.0, 0.0, 0.0}));
  const Representation b = fn_to_generators(make_genus2({2, 2.5, 3}, {0.2, 0.0, 0.0}));
  CHECK(max_trace_error(b) < 1e-9);
  // Generator sets differ after reduction, so compare the length spectra.
  auto spectrum = [](const Representation& r) {
    std::vector<double> out;
    for (const GeodesicHit& h : enumerate_short_geodesics(r, 8, 7.0, 1)) out.push_back(h.length);
    return out;
  };
  const std::vector<double> sa = spectrum(a), sb = spectrum(b);
  for (double len : {2.0, 2.5, 3.0}) {
    auto near = [len](double x) { return std::fabs(x - len) < 1e-9; };
    CHECK(std::any_of(sa.begin(), sa.end(), near));
    CHECK(std::any_of(sb.begin(), sb.end(), near));
  }
  bool moved = sa.size() != sb.size();
  for (std::size_t i = 0; i < sa.size() && !moved; ++i) moved = std::fabs(sa[i] - sb[i]) > 1e-6;
  CHECK(moved);
}

TEST_CASE("Nielsen reduction keeps the group") {
  const Representation r = fn_to_generators(random_spec("genus3", 2));
  const Representation n = nielsen_reduce(r);
  CHECK(relator_residual(n) < 1e-8);
  CHECK(max_trace_error(n) < 1e-9);
}
