#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "systole/fuchsian.hpp"
#include "systole/surface.hpp"

namespace systole {

struct GeodesicHit {
  double length = 0.0;
  Word word;  // cyclically reduced, canonical under rotation and inversion
  friend bool operator==(const GeodesicHit&, const GeodesicHit&) = default;
};

struct SearchOptions {
  int cutoff = 12;
  double length_bound = 0.0;
  /// 0: SYSTOLE_THREADS, else hardware concurrency.
  int threads = 0;
  /// Slack added to length_bound + 2 * covering radius; negative = default.
  double radius_margin = -1.0;
  /// Abort (not exhausted, not stable) past this many group elements.
  std::int64_t max_elements = 30'000'000;
  /// Several basepoints with a smaller covering radius each (false: i only).
  bool multi_base = true;
};

struct SearchResult {
  std::vector<GeodesicHit> hits;  // sorted by (length, word)
  /// Smallest hit length among elements first reached at depth d (index d);
  /// +inf where none.
  std::vector<double> min_by_depth;
  bool exhausted = false;  // the ball ran out before the cutoff
  bool truncated = false;  // max_elements reached
  std::int64_t elements = 0;
  std::int64_t elliptic = 0;
  double covering_radius = 0.0;  // per basepoint
  double search_radius = 0.0;
  int basepoints = 1;

  /// Smallest hit length among words of length <= depth.
  double min_up_to(int depth) const;
};

/// Upper bound on how far any point of the thick part is from the orbit of i.
double covering_radius(const Representation& rep);

/// Level-by-level enumeration of group elements g with word length <= cutoff
/// and |g i - i| inside the search ball; elements are deduplicated by g(i).
SearchResult search_geodesics(const Representation& rep, const SearchOptions& opt);

std::vector<GeodesicHit> enumerate_short_geodesics(const Representation& rep, int cutoff,
                                                   double length_bound, int threads = 0);

/// Cyclic reduction, then the lexicographically least rotation of the word
/// or of its inverse.
Word canonical_word(const Word& word);
Word free_reduce(const Word& word);

int default_thread_count();

struct SystoleEstimate {
  double value = 0.0;
  Word witness_word;
  int cutoff = 0;
  bool stable = false;
  double upper_bound_used = 0.0;
  bool exhausted = false;
  std::int64_t elements = 0;
  std::int64_t elliptic = 0;
  double search_radius = 0.0;
};

/// Search prune threshold: the shortest pants curve, capped for closed
/// surfaces by 2 log(4g - 2).
double systole_length_bound(const SurfaceSpec& spec);

SystoleEstimate systole(const SurfaceSpec& spec, int cutoff, int threads = 0);
SystoleEstimate systole(const Representation& rep, const SurfaceSpec& spec, int cutoff, int threads = 0);

std::string format_word(const Word& word);

}  // namespace systole
