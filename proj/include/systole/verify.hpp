#pragma once

#include <string>
#include <vector>

#include "systole/engine.hpp"
#include "systole/surface.hpp"

namespace systole {

enum class Verdict { pass, fail, inconclusive };

const char* verdict_name(Verdict v) noexcept;

/// Outcome of a numeric check of a construction claim. Both sides are
/// computed at the same cutoff; stability is empirical.
struct VerifyReport {
  std::string check;  // "cover" or "equality"
  Verdict verdict = Verdict::inconclusive;
  std::string reason;
  std::string curve;
  int k = 0;
  int cutoff = 0;
  double tolerance = 1e-6;
  SystoleEstimate base;
  SystoleEstimate derived;
  std::vector<TwistParam> twists;
  Signature base_signature;
  Signature derived_signature;
};

/// sys(cover) >= sys(base) - 1e-6 for the k-fold cyclic cover with the base
/// twist on every copy.
VerifyReport verify_cover_monotone(const SurfaceSpec& spec, CurveRef curve, int k, int cutoff,
                                   int threads = 0);

/// When `curve` is the base systole, every twist choice on the cover keeps
/// the systole equal to it (within 1e-6).
VerifyReport verify_cover_equality(const SurfaceSpec& spec, CurveRef curve, int k,
                                     const std::vector<TwistParam>& twists, int cutoff,
                                     int threads = 0);

}  // namespace systole
