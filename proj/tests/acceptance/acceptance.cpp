// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "systole/bounds.hpp"
#include "systole/builders.hpp"
#include "systole/engine.hpp"
#include "systole/fuchsian.hpp"
#include "systole/hyptrig.hpp"
#include "systole/table.hpp"
#include "systole/verify.hpp"

#ifndef SYSTOLE_FIXTURES_DIR
#define SYSTOLE_FIXTURES_DIR "fixtures"
#endif

using namespace systole;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Expected {
  double systole, ratio, upper;
};

std::map<int, Expected> load_expected() {
  std::ifstream f(std::string(SYSTOLE_FIXTURES_DIR) + "/table1_expected.csv");
  std::map<int, Expected> out;
  std::string line;
  std::getline(f, line);
  while (std::getline(f, line)) {
    int g;
    Expected e;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf", &g, &e.systole, &e.ratio, &e.upper) == 4) out[g] = e;
  }
  return out;
}

// Every engine estimate from criteria 6 and 7, for the scan in criterion 9.
struct Seen {
  Signature sig;
  double value;
  std::string what;
};
std::vector<Seen> g_seen;

void remember(const VerifyReport& r, const std::string& what) {
  g_seen.push_back({r.base_signature, r.base.value, what + " base"});
  if (r.derived.cutoff > 0) g_seen.push_back({r.derived_signature, r.derived.value, what + " cover"});
}

Outcome c1_table() {
  const auto expected = load_expected();
  const auto bases = load_base_records(std::string(SYSTOLE_FIXTURES_DIR) + "/table1_bases.csv");
  const auto table = compose_best_known_table(bases, 25);
  Outcome o;
  int checked = 0;
  double worst = 0.0;
  for (const BoundRecord& r : table) {
    if (r.rule == Rule::base) continue;
    const auto it = expected.find(r.genus());
    if (it == expected.end()) {
      o.pass = false;
      o.detail += " no row for " + std::to_string(r.genus());
      continue;
    }
    const double ds = std::fabs(r.systole_value - it->second.systole);
    const double dr = std::fabs(r.ratio() - it->second.ratio);
    worst = std::max({worst, ds, dr});
    if (ds > 0.01 + 1e-9 || dr > 0.01 + 1e-9) {
      o.pass = false;
      o.detail += " genus " + std::to_string(r.genus());
    }
    ++checked;
  }
  if (checked != 14) o.pass = false;
  o.detail = std::to_string(checked) + " derived rows, max deviation " + std::to_string(worst) + o.detail;
  return o;
}

Outcome c2_upper() {
  const auto expected = load_expected();
  Outcome o;
  double worst = 0.0;
  for (int g = 2; g <= 25; ++g) {
    const double d = std::fabs(compact_upper_bound(g) - expected.at(g).upper);
    worst = std::max(worst, d);
    if (d > 0.01 + 1e-9) o.pass = false;
  }
  o.detail = "g = 2..25, max deviation " + std::to_string(worst);
  return o;
}

Outcome c3_fpiece() {
  Outcome o;
  long double worst = 0;
  for (int i = 0; i <= 40; ++i) {
    const double b = 0.5 * i;
    const CubicRoot r = fpiece_cubic_root(b);
    worst = std::max(worst, std::fabs(r.residual));
    if (!(std::fabs(r.residual) < 1e-10L) || !(r.s > b / 2)) o.pass = false;
    // sign scan over the bracket [1, cosh(b/2) + 3]
    const long double hi = std::cosh(0.5L * b) + 3.0L;
    int changes = 0;
    long double prev = fpiece_cubic(1.0L, b);
    const int steps = 20000;
    for (int k = 1; k <= steps; ++k) {
      const long double x = 1.0L + (hi - 1.0L) * k / steps;
      const long double v = fpiece_cubic(x, b);
      if ((prev < 0) != (v < 0)) ++changes;
      prev = v;
    }
    if (changes != 1) o.pass = false;
  }
  o.detail = "41 points, max residual " + std::to_string(static_cast<double>(worst));
  return o;
}

Outcome c4_qpiece() {
  Outcome o;
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double b = 0.5 * i;
    const double s = qpiece_max_systole(GeodesicLength::or_zero(b));
    const double d = std::fabs(std::cosh(s / 2) - (std::cosh(b / 6) + 0.5));
    worst = std::max(worst, d);
    if (!(d < 1e-12) || !(s > b / 3)) o.pass = false;
  }
  o.detail = "41 points, max identity error " + std::to_string(worst);
  return o;
}

Outcome c5_representation() {
  Outcome o;
  double res = 0.0, tr = 0.0;
  int n = 0;
  for (const char* fam : {"genus2", "genus3"})
    for (int seed = 1; seed <= 20; ++seed) {
      const Representation r = fn_to_generators(random_spec(fam, 1000 + seed));
      res = std::max(res, relator_residual(r));
      for (std::size_t c = 0; c < r.curve_words.size(); ++c)
        tr = std::max(tr, std::fabs(std::fabs(evaluate(r, r.curve_words[c]).trace()) - r.curve_trace(static_cast<int>(c))));
      ++n;
    }
  o.pass = res < 1e-8 && tr < 1e-9;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d specs, max residual %.2e, max trace error %.2e", n, res, tr);
  o.detail = buf;
  return o;
}

// Cutoff 12 first, then 14 if the estimate is not yet stable.
VerifyReport cover_check(const SurfaceSpec& s, int k) {
  VerifyReport r = verify_cover_monotone(s, {0}, k, 12);
  if (r.verdict == Verdict::inconclusive) r = verify_cover_monotone(s, {0}, k, 14);
  return r;
}

Outcome c6_cover() {
  Outcome o;
  int passed = 0, total = 0;
  auto record = [&](const VerifyReport& r, const std::string& what) {
    remember(r, what);
    ++total;
    if (r.verdict == Verdict::pass && r.base.stable && r.derived.stable) ++passed;
    else o.detail += " [" + what + ": " + verdict_name(r.verdict) + "]";
  };
  for (int seed = 1; seed <= 10; ++seed)
    for (int k : {2, 3}) record(cover_check(random_spec("genus2", 2000 + seed), k), "genus2 #" + std::to_string(seed) + " k=" + std::to_string(k));
  for (int seed = 1; seed <= 5; ++seed)
    for (int k : {2, 3}) record(cover_check(random_spec("cusped12", 3000 + seed), k), "cusped12 #" + std::to_string(seed) + " k=" + std::to_string(k));
  o.pass = passed == total;
  o.detail = std::to_string(passed) + "/" + std::to_string(total) + " pass, stable" + o.detail;
  return o;
}

Outcome c7_equality() {
  Outcome o;
  const SurfaceSpec s = builtin_spec("genus2-systole");
  int passed = 0, total = 0;
  double worst = 0.0;
  for (int k : {2, 3})
    for (int v = 1; v <= 5; ++v) {
      SpecRng rng(4000 + 10 * k + v);
      std::vector<TwistParam> tw;
      for (int i = 0; i < k; ++i) tw.emplace_back(rng.twist());
      VerifyReport r = verify_cover_equality(s, {0}, k, tw, 12);
      if (r.verdict == Verdict::inconclusive) r = verify_cover_equality(s, {0}, k, tw, 14);
      remember(r, "equality k=" + std::to_string(k));
      ++total;
      if (r.verdict == Verdict::pass) {
        ++passed;
        worst = std::max(worst, std::fabs(r.derived.value - r.base.value));
      } else {
        o.detail += std::string(" [k=") + std::to_string(k) + " " + verdict_name(r.verdict) + ": " + r.reason + "]";
      }
    }
  o.pass = passed == total;
  char buf[120];
  std::snprintf(buf, sizeof buf, "%d/%d equal, max |cover - base| %.2e", passed, total, worst);
  o.detail = buf + o.detail;
  return o;
}

Outcome c8_collars() {
  Outcome o;
  double worst = 0.0;
  for (int i = 1; i <= 400; ++i) {
    const double a = 0.05 * i;
    worst = std::max(worst, std::fabs(collar_width_compact(GeodesicLength(a)).value() - a / 4));
  }
  const double a0 = four_arcsinh_one();
  for (int i = 0; i <= 400; ++i) {
    const double a = a0 + 0.05 * i;
    const double closed = std::min(a / 4, std::max(1.319, a / 4 - std::asinh(1.0 / std::sinh(a / 4))));
    worst = std::max(worst, std::fabs(half_collar_width_cusped(GeodesicLength(a)).value() - closed));
  }
  const double at6 = half_collar_width_cusped(GeodesicLength(6.0)).value();
  const double at8 = half_collar_width_cusped(GeodesicLength(8.0)).value();
  worst = std::max({worst, std::fabs(at6 - 1.319), std::fabs(at8 - (2.0 - std::asinh(1.0 / std::sinh(2.0))))});
  o.pass = worst < 1e-12 && at8 < 2.0 && at8 > 1.319;
  char buf[120];
  std::snprintf(buf, sizeof buf, "grids of 400, max error %.2e; alpha=6 -> %.4f, alpha=8 -> %.4f", worst, at6, at8);
  o.detail = buf;
  return o;
}

Outcome c9_sanity() {
  Outcome o;
  int checked = 0;
  for (const Seen& s : g_seen) {
    double bound;
    if (s.sig.is_closed()) bound = compact_upper_bound(s.sig.genus);
    else if (s.sig.cusps >= 2 && s.sig.is_complete()) bound = cusped_upper_bound(s.sig.genus, s.sig.cusps);
    else continue;
    ++checked;
    if (!(s.value <= bound + 1e-12)) {
      o.pass = false;
      o.detail += " [" + s.what + "]";
    }
  }
  if (checked == 0) o.pass = false;
  o.detail = std::to_string(checked) + " estimates within the upper bound" + o.detail;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"best-known table derived rows", c1_table},
      {"upper-bound column", c2_upper},
      {"F-piece cubic", c3_fpiece},
      {"Q-piece closed form", c4_qpiece},
      {"representation contract", c5_representation},
      {"cover monotonicity", c6_cover},
      {"cover equality", c7_equality},
      {"collar formulas", c8_collars},
      {"upper-bound scan", c9_sanity},
  };
  bool all = true;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d %s: %s (%s; %.2fs)\n", n, name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
