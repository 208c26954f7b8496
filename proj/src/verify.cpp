#include "systole/verify.hpp"

#include <cmath>

#include "systole/error.hpp"

namespace systole {

namespace {

constexpr double kTolerance = 1e-6;

VerifyReport start(const char* check, const SurfaceSpec& spec, CurveRef curve, int k, int cutoff) {
  if (k < 2) throw Error(Errc::domain, "cover order must be at least 2");
  if (cutoff < 1) throw Error(Errc::domain, "cutoff must be >= 1");
  VerifyReport r;
  r.base_signature = validate(spec);
  const bool nonsep = is_nonseparating(spec, curve);
  r.check = check;
  r.curve = spec.curve_name(curve.index);
  r.k = k;
  r.cutoff = cutoff;
  r.tolerance = kTolerance;
  if (!nonsep) throw Error(Errc::separating_curve, "curve '" + r.curve + "' separates");
  return r;
}

}  // namespace

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

VerifyReport verify_cover_monotone(const SurfaceSpec& spec, CurveRef curve, int k, int cutoff, int threads) {
  VerifyReport r = start("cover", spec, curve, k, cutoff);
  const CoverResult cover = cyclic_cover(spec, curve, k);
  r.twists.assign(k, spec.gluings[curve.index].twist);
  r.derived_signature = validate(cover.spec);
  r.base = systole(spec, cutoff, threads);
  r.derived = systole(cover.spec, cutoff, threads);
  if (!r.base.stable || !r.derived.stable) {
    r.verdict = Verdict::inconclusive;
    r.reason = "estimate not stable at this cutoff";
  } else if (r.derived.value >= r.base.value - kTolerance) {
    r.verdict = Verdict::pass;
    r.reason = "cover systole >= base systole";
  } else {
    r.verdict = Verdict::fail;
    r.reason = "cover systole below base systole";
  }
  return r;
}

VerifyReport verify_cover_equality(const SurfaceSpec& spec, CurveRef curve, int k,
                                     const std::vector<TwistParam>& twists, int cutoff, int threads) {
  VerifyReport r = start("equality", spec, curve, k, cutoff);
  const CoverResult cover = cyclic_cover(spec, curve, k, twists);
  r.twists = twists;
  r.derived_signature = validate(cover.spec);
  r.base = systole(spec, cutoff, threads);
  const double len = curve_length(spec, curve);
  if (!r.base.stable || std::fabs(r.base.value - len) > kTolerance) {
    r.verdict = Verdict::inconclusive;
    r.reason = r.base.stable ? "precondition: curve is not the base systole"
                             : "precondition unverifiable: base estimate not stable";
    return r;
  }
  r.derived = systole(cover.spec, cutoff, threads);
  if (!r.derived.stable) {
    r.verdict = Verdict::inconclusive;
    r.reason = "cover estimate not stable at this cutoff";
  } else if (std::fabs(r.derived.value - r.base.value) <= kTolerance) {
    r.verdict = Verdict::pass;
    r.reason = "cover systole equals base systole";
  } else {
    r.verdict = Verdict::fail;
    r.reason = "cover systole differs from base systole";
  }
  return r;
}

}  // namespace systole
