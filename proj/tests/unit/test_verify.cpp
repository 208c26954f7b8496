#include "doctest.h"
#include "systole/builders.hpp"
#include "systole/error.hpp"
#include "systole/verify.hpp"

using namespace systole;

TEST_CASE("cover monotonicity on examples") {
  const VerifyReport r = verify_cover_monotone(builtin_spec("genus2"), {0}, 2, 12, 1);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.derived_signature == Signature{3, 0, 0});
  CHECK(r.derived.value >= r.base.value - 1e-6);

  const VerifyReport c = verify_cover_monotone(random_spec("cusped12", 2), {0}, 3, 12, 1);
  CHECK(c.derived_signature == Signature{1, 6, 6});
  CHECK(c.verdict == Verdict::pass);
}

TEST_CASE("cover equality when the curve is the systole") {
  const SurfaceSpec s = builtin_spec("genus2-systole");
  const VerifyReport r =
      verify_cover_equality(s, {0}, 3, {TwistParam(0.3), TwistParam(-0.1), TwistParam(0.5)}, 12, 1);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.derived.value == doctest::Approx(r.base.value).epsilon(1e-6));
}

TEST_CASE("equality precondition fails for a non-systole curve") {
  const SurfaceSpec s = make_genus2({3.0, 1.0, 3.0});
  const VerifyReport r = verify_cover_equality(s, {0}, 2, {TwistParam(0.1), TwistParam(0.2)}, 12, 1);
  CHECK(r.verdict == Verdict::inconclusive);
}

TEST_CASE("bad verify arguments") {
  CHECK_THROWS_AS(verify_cover_monotone(builtin_spec("genus2"), {0}, 1, 12, 1), Error);
  try {
    verify_cover_monotone(builtin_spec("genus2-chain"), {2}, 2, 12, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::separating_curve);
  }
}
