#pragma once

#include <optional>
#include <string>
#include <vector>

#include "systole/surface.hpp"

namespace systole {

/// 2 log(4g - 2), natural log.
double compact_upper_bound(int genus);
/// 4 log((12g - 12 + 2n) / n); needs n >= 2, (g,n) != (0,3), 12g - 12 + 2n > 0.
double cusped_upper_bound(int genus, int cusps);

enum class Rule {
  base,
  cover,        // (k(g-1)+1): s
  add_handle,   // (g+1): s/2
  join,         // (g1+g2-1): min{s2/2, s1} with s2 >= s1
  cusp_double,  // (2g, 2n-4): min{s, max{5.276, s - 4 asinh(1/sinh(s/4))}}
  cusp_fpiece,  // (2g+1, 2n-4): s/2
  cusp_qpiece,  // (g+1, n-2): s/3
  cusp_cover,   // (k(g-1)+1, kn): s, not strict
};

/// Short rule identifier: "base", "cover", "handle", "join", "cusp-double", ...
const char* rule_id(Rule r) noexcept;
std::optional<Rule> parse_rule(const std::string& id);

/// Lower bound on the maximal systole for a signature (cusps only; no
/// geodesic boundary).
struct BoundRecord {
  Signature signature;
  double systole_value = 0.0;
  bool strict = false;
  Rule rule = Rule::base;
  int k = 0;  // multiplicity for the cover rules
  std::string name;       // construction, e.g. "2 x H_7"
  std::string reference;  // base records: where the surface comes from
  std::vector<BoundRecord> inputs;

  int genus() const noexcept { return signature.genus; }
  int depth() const noexcept;
  /// systole / log(genus); compact records only.
  double ratio() const;
  std::string provenance() const;
};

BoundRecord base_record(int genus, double systole, std::string name, std::string reference = {});
BoundRecord base_record(Signature sig, double systole, std::string name, std::string reference = {});

BoundRecord apply_rule(Rule rule, const std::vector<BoundRecord>& inputs, std::optional<int> k = std::nullopt);

/// Best record per genus in [2, max_genus] from the compact rules, applied to
/// at most `max_depth` levels. Ties go to the larger value, then the shallower
/// derivation, then rule order.
std::vector<BoundRecord> compose_best_known_table(const std::vector<BoundRecord>& bases, int max_genus,
                                                  int max_depth = 3);

/// Reads "genus,systole,name,reference" rows (header line required).
std::vector<BoundRecord> load_base_records(const std::string& path);
std::vector<BoundRecord> parse_base_records(const std::string& csv);

struct CorollaryCheck {
  bool holds = true;
  std::vector<int> violations;  // genera where the claimed ordering is not implied
};

/// From bases for genus 2 and 3: every genus g >= 3 gets a strict bound at
/// least sys(2), every odd g >= 5 at least sys(3).
CorollaryCheck check_low_genus_corollary(const std::vector<BoundRecord>& table, double sys2, double sys3);

struct AsymptoticRow {
  int k = 0;
  int genus = 0;   // k(g-1)+1
  double value = 0.0;
  double rhs = 0.0;        // (4/3) log(genus) - c1
  double c1_needed = 0.0;  // smallest c1 that makes the row hold
  bool holds = false;
};

/// Base genus g with s = (4/3) log g - c0, pushed up by the cover rule for
/// k = 2..k_max. The constants are inputs; none is known explicitly.
std::vector<AsymptoticRow> asymptotic_report(int genus, double c0, double c1, int k_max);

}  // namespace systole
