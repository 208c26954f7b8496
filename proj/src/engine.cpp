#include "systole/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "systole/error.hpp"

namespace systole {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHyperbolicSlack = 1e-7;
// Key resolution; distinct orbit points inside any feasible ball differ by
// far more than this in the normalized coordinates below.
constexpr double kCell = 1e-8;
constexpr double kDefaultMargin = 1.0;
constexpr double kTieSlack = 1e-12;

// g(i) is encoded by g g^T = [[p, q], [q, r]], with s = p + r = 2 cosh d(i, g i).
// (p / s, q / s) fixes the direction and log s the distance.
struct Key {
  std::int64_t x, y, z;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(k.x) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::uint64_t>(k.y) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(k.z) + 0x94D049BB133111EBull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

struct Coords {
  double v[3];
};

Coords coords(const Mat2& m) {
  const double p = m.a * m.a + m.b * m.b;
  const double q = m.a * m.c + m.b * m.d;
  const double r = m.c * m.c + m.d * m.d;
  const double s = p + r;
  return {{p / s / kCell, q / s / kCell, std::log(s) / kCell}};
}

using Visited = std::unordered_map<Key, std::int32_t, KeyHash>;

// Probes the cell and, for coordinates close to a cell wall, the neighbor
// across it.
std::int32_t lookup(const Visited& seen, const Coords& c) {
  std::int64_t base[3];
  int alt[3];
  for (int i = 0; i < 3; ++i) {
    const double f = std::floor(c.v[i]);
    base[i] = static_cast<std::int64_t>(f);
    const double frac = c.v[i] - f;
    alt[i] = frac < 0.25 ? -1 : (frac > 0.75 ? 1 : 0);
  }
  for (int dx = 0; dx <= (alt[0] != 0); ++dx)
    for (int dy = 0; dy <= (alt[1] != 0); ++dy)
      for (int dz = 0; dz <= (alt[2] != 0); ++dz) {
        const Key k{base[0] + dx * alt[0], base[1] + dy * alt[1], base[2] + dz * alt[2]};
        const auto it = seen.find(k);
        if (it != seen.end()) return it->second;
      }
  return -1;
}

Key key_of(const Coords& c) {
  return {static_cast<std::int64_t>(std::floor(c.v[0])), static_cast<std::int64_t>(std::floor(c.v[1])),
          static_cast<std::int64_t>(std::floor(c.v[2]))};
}

struct Node {
  Mat2 m;
  std::int32_t parent;
  std::int32_t letter;
};

struct Child {
  Mat2 m;
  Coords c;
  std::int32_t parent;
  std::int32_t letter;
};

struct Walk {
  std::vector<Node> nodes;
  std::vector<std::size_t> level_start;  // nodes of depth d: [level_start[d], level_start[d+1])
  bool exhausted = false;
  bool truncated = false;
};

// Breadth-first walk over group elements inside {|g|_F^2 <= 2 cosh radius}.
// Children are computed in parallel per frontier chunk and merged in
// frontier order, so the result does not depend on the thread count.
template <class OnNew>
Walk walk_ball(const Representation& rep, int cutoff, double radius, int threads, std::int64_t max_elements,
               OnNew&& on_new) {
  const int ng = static_cast<int>(rep.generators.size());
  std::vector<Mat2> letters;  // letter l (+-1..ng) at index l + ng
  letters.resize(2 * ng + 1);
  for (int k = 1; k <= ng; ++k) {
    letters[ng + k] = rep.generators[k - 1];
    letters[ng - k] = rep.generators[k - 1].inverse();
  }
  const double prune = 2.0 * std::cosh(radius) * (1.0 + 1e-12);

  Walk w;
  Visited seen;
  w.nodes.push_back({Mat2::identity(), -1, 0});
  seen.emplace(key_of(coords(Mat2::identity())), 0);
  w.level_start = {0, 1};
  threads = std::max(1, threads);

  for (int depth = 1; depth <= cutoff; ++depth) {
    const std::size_t lo = w.level_start[depth - 1], hi = w.level_start[depth];
    if (lo == hi) {
      w.exhausted = true;
      break;
    }
    const std::size_t count = hi - lo;
    const int nchunks = static_cast<int>(std::min<std::size_t>(count, static_cast<std::size_t>(threads) * 8));
    std::vector<std::vector<Child>> out(nchunks);
    auto work = [&](int chunk) {
      const std::size_t a = lo + count * chunk / nchunks, b = lo + count * (chunk + 1) / nchunks;
      auto& dst = out[chunk];
      for (std::size_t n = a; n < b; ++n) {
        const Node& node = w.nodes[n];
        for (int l = -ng; l <= ng; ++l) {
          if (l == 0 || l == -node.letter) continue;
          const Mat2 m = node.m * letters[l + ng];
          if (m.frobenius_sq() > prune) continue;
          const Coords c = coords(m);
          if (lookup(seen, c) >= 0) continue;
          dst.push_back({m, c, static_cast<std::int32_t>(n), l});
        }
      }
    };
    if (threads == 1 || nchunks == 1) {
      for (int c = 0; c < nchunks; ++c) work(c);
    } else {
      std::vector<std::thread> pool;
      std::atomic<int> next{0};
      const int nt = std::min(threads, nchunks);
      for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
          for (int c; (c = next.fetch_add(1)) < nchunks;) work(c);
        });
      for (auto& t : pool) t.join();
    }
    for (const auto& chunk : out) {
      for (const Child& ch : chunk) {
        if (lookup(seen, ch.c) >= 0) continue;
        const auto id = static_cast<std::int32_t>(w.nodes.size());
        seen.emplace(key_of(ch.c), id);
        w.nodes.push_back({ch.m, ch.parent, ch.letter});
        on_new(w, id, depth);
        if (static_cast<std::int64_t>(w.nodes.size()) >= max_elements) {
          w.truncated = true;
          break;
        }
      }
      if (w.truncated) break;
    }
    w.level_start.push_back(w.nodes.size());
    if (w.truncated) break;
  }
  if (!w.truncated && w.level_start.back() == w.level_start[w.level_start.size() - 2]) w.exhausted = true;
  return w;
}

Word word_of(const Walk& w, std::int32_t id) {
  Word out;
  for (; w.nodes[id].parent >= 0; id = w.nodes[id].parent) out.push_back(w.nodes[id].letter);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

double SearchResult::min_up_to(int depth) const {
  double best = kInf;
  for (int d = 0; d <= depth && d < static_cast<int>(min_by_depth.size()); ++d) best = std::min(best, min_by_depth[d]);
  return best;
}

int default_thread_count() {
  if (const char* env = std::getenv("SYSTOLE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

Word free_reduce(const Word& word) {
  Word out;
  for (int x : word) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  return out;
}

Word canonical_word(const Word& word) {
  Word w = free_reduce(word);
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) ++lo, --hi;
  w = Word(w.begin() + lo, w.begin() + hi);
  if (w.empty()) return w;
  Word best = w;
  for (const Word& base : {w, inverse_word(w)}) {
    for (std::size_t r = 0; r < base.size(); ++r) {
      Word rot(base.begin() + r, base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + r);
      if (rot < best) best = std::move(rot);
    }
  }
  return best;
}

std::string format_word(const Word& word) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < word.size(); ++i) os << (i ? "," : "") << word[i];
  os << ']';
  return os.str();
}

namespace {

double covering_radius_impl(const Representation& rep, int walk_cutoff, std::int64_t walk_cap) {
  if (rep.core_samples.empty()) return rep.core_radius;
  const double r = rep.core_radius;
  std::vector<Vec3> orbit;
  const Vec3 base = point_from_z({0.0, 1.0});
  walk_ball(rep, walk_cutoff, std::min(2.0 * r, r + 3.0), default_thread_count(), walk_cap,
            [&](const Walk& w, std::int32_t id, int) { orbit.push_back(act(w.nodes[id].m, base)); });
  orbit.insert(orbit.begin(), base);
  // Greedy descent toward i under words of length <= 2. Any orbit point it
  // lands near is a valid upper bound, and it reaches far orbit points the
  // walk above cannot when generators are long.
  std::vector<Mat2> moves;
  for (const Mat2& g : rep.generators) {
    moves.push_back(g);
    moves.push_back(g.inverse());
  }
  const std::size_t singles = moves.size();
  for (std::size_t a = 0; a < singles; ++a)
    for (std::size_t b = 0; b < singles; ++b)
      if ((a ^ 1) != b) moves.push_back(moves[a] * moves[b]);
  double worst = 0.0;
  for (const Vec3& s : rep.core_samples) {
    double best = kInf;
    for (const Vec3& p : orbit) best = std::min(best, -minkowski(s, p));
    Vec3 x = s;
    double cur = -minkowski(x, base);
    for (int step = 0; step < 256; ++step) {
      double next = cur;
      const Mat2* pick = nullptr;
      for (const Mat2& h : moves) {
        const double c = -minkowski(act(h, x), base);
        if (c < next) next = c, pick = &h;
      }
      if (!pick || next > cur * (1.0 - 1e-12)) break;
      x = normalize_minkowski(act(*pick, x));
      cur = -minkowski(x, base);
    }
    best = std::min(best, cur);
    worst = std::max(worst, best);
  }
  const double sampled = (worst <= 1.0 ? 0.0 : std::acosh(worst)) + rep.core_mesh;
  return std::min(r, sampled);
}

}  // namespace

double covering_radius(const Representation& rep) { return covering_radius_impl(rep, 8, 400'000); }

namespace {

constexpr int kMaxBasepoints = 48;

struct BasePlan {
  std::vector<Vec3> points;
  double radius = 0.0;
};

// Every core sample lies within `radius` of some basepoint. More basepoints
// shrink the radius; the walk cost per basepoint grows like exp(2 radius), so
// keep the count that minimizes count * exp(2 radius).
BasePlan plan_basepoints(const Representation& rep, bool multi) {
  const Vec3 base = point_from_z({0.0, 1.0});
  if (!multi || rep.core_samples.empty()) return {{base}, covering_radius(rep)};
  // A short orbit walk is enough here; the single-point radius rarely wins.
  BasePlan plan{{base}, covering_radius_impl(rep, 4, 20'000)};
  const auto& samples = rep.core_samples;
  std::vector<double> c(samples.size());
  for (std::size_t n = 0; n < samples.size(); ++n) c[n] = -minkowski(samples[n], base);
  std::vector<Vec3> pts{base};
  double best_cost = std::exp(2.0 * plan.radius);
  for (int m = 2; m <= kMaxBasepoints; ++m) {
    const std::size_t far = static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
    const Vec3 p = samples[far];
    pts.push_back(p);
    double worst = 0.0;
    for (std::size_t n = 0; n < samples.size(); ++n) {
      c[n] = std::min(c[n], -minkowski(samples[n], p));
      worst = std::max(worst, c[n]);
    }
    const double rho = (worst <= 1.0 ? 0.0 : std::acosh(worst)) + rep.core_mesh;
    const double cost = m * std::exp(2.0 * rho);
    if (cost < best_cost * (1.0 - 1e-9)) {
      best_cost = cost;
      plan = {pts, rho};
    }
  }
  return plan;
}

}  // namespace

SearchResult search_geodesics(const Representation& rep, const SearchOptions& opt) {
  if (opt.cutoff < 1) throw Error(Errc::domain, "cutoff must be >= 1");
  if (!(opt.length_bound > 0.0)) throw Error(Errc::domain, "length bound must be positive");
  SearchResult res;
  const BasePlan plan = plan_basepoints(rep, opt.multi_base);
  res.covering_radius = plan.radius;
  res.basepoints = static_cast<int>(plan.points.size());
  const double margin = opt.radius_margin < 0.0 ? kDefaultMargin : opt.radius_margin;
  res.search_radius = opt.length_bound + 2.0 * res.covering_radius + margin;
  res.min_by_depth.assign(opt.cutoff + 1, kInf);
  res.exhausted = true;

  // A closed geodesic of length <= L passes within `radius` of an orbit point
  // of some basepoint p, so a conjugate moves p by at most L + 2 radius. Each
  // basepoint is moved to i and gets its own walk.
  std::map<Word, double> found;
  const double bound = opt.length_bound;
  const int threads = opt.threads > 0 ? opt.threads : default_thread_count();
  for (const Vec3& p : plan.points) {
    const std::int64_t budget = opt.max_elements - res.elements;
    if (budget <= 0) {
      res.truncated = true;
      res.exhausted = false;
      break;
    }
    Representation local;
    const Mat2 a = move_i_to(z_from_point(p));
    const Mat2 ai = a.inverse();
    for (const Mat2& g : rep.generators) local.generators.push_back(ai * g * a);
    const Walk w = walk_ball(local, opt.cutoff, res.search_radius, threads, budget,
                             [&](const Walk& walk, std::int32_t id, int depth) {
                               const double tr = std::fabs(walk.nodes[id].m.trace());
                               if (tr < 2.0 - kHyperbolicSlack) {
                                 ++res.elliptic;
                                 return;
                               }
                               if (tr <= 2.0 + kHyperbolicSlack) return;
                               const double len = trace_to_length(tr);
                               if (len > bound) return;
                               res.min_by_depth[depth] = std::min(res.min_by_depth[depth], len);
                               Word cw = canonical_word(word_of(walk, id));
                               auto [it, fresh] = found.emplace(std::move(cw), len);
                               if (!fresh) it->second = std::min(it->second, len);
                             });
    res.exhausted = res.exhausted && w.exhausted;
    res.truncated = res.truncated || w.truncated;
    res.elements += static_cast<std::int64_t>(w.nodes.size());
    if (w.truncated) break;
  }
  if (res.truncated) res.exhausted = false;
  for (auto& [word, len] : found) res.hits.push_back({len, word});
  std::sort(res.hits.begin(), res.hits.end(), [](const GeodesicHit& a, const GeodesicHit& b) {
    return a.length != b.length ? a.length < b.length : a.word < b.word;
  });
  return res;
}

std::vector<GeodesicHit> enumerate_short_geodesics(const Representation& rep, int cutoff, double length_bound,
                                                   int threads) {
  SearchOptions opt;
  opt.cutoff = cutoff;
  opt.length_bound = length_bound;
  opt.threads = threads;
  return search_geodesics(rep, opt).hits;
}

double systole_length_bound(const SurfaceSpec& spec) {
  const Signature sig = validate(spec);
  double bound = min_pants_curve_length(spec);
  if (sig.is_closed()) bound = std::min(bound, 2.0 * std::log(4.0 * sig.genus - 2.0));
  if (!std::isfinite(bound)) throw Error(Errc::unsupported, "spec has no interior curve to bound the search");
  return bound * (1.0 + 1e-9);
}

SystoleEstimate systole(const Representation& rep, const SurfaceSpec& spec, int cutoff, int threads) {
  SearchOptions opt;
  opt.cutoff = cutoff;
  opt.length_bound = systole_length_bound(spec);
  opt.threads = threads;
  const SearchResult res = search_geodesics(rep, opt);
  SystoleEstimate est;
  est.cutoff = cutoff;
  est.upper_bound_used = opt.length_bound;
  est.exhausted = res.exhausted;
  est.elements = res.elements;
  est.elliptic = res.elliptic;
  est.search_radius = res.search_radius;
  // Pants curves are closed geodesics whatever the search reaches.
  std::vector<GeodesicHit> cands = res.hits;
  double curve_min = kInf;
  for (const Word& w : rep.curve_words) {
    const double tr = std::fabs(evaluate(rep, w).trace());
    if (tr > 2.0 + kHyperbolicSlack && trace_to_length(tr) <= opt.length_bound) {
      cands.push_back({trace_to_length(tr), canonical_word(w)});
      curve_min = std::min(curve_min, cands.back().length);
    }
  }
  if (cands.empty()) throw Error(Errc::precondition, "no closed geodesic below the length bound was found");
  double best = kInf;
  for (const GeodesicHit& h : cands) best = std::min(best, h.length);
  // Among lengths tied with the minimum, the shortest word.
  const GeodesicHit* pick = nullptr;
  for (const GeodesicHit& h : cands) {
    if (h.length > best + kTieSlack * best) continue;
    if (!pick || h.word.size() < pick->word.size() || (h.word.size() == pick->word.size() && h.word < pick->word))
      pick = &h;
  }
  est.value = best;
  est.witness_word = pick->word;
  const double early = std::min(res.min_up_to(cutoff - 2), curve_min);
  est.stable = !res.truncated && (res.exhausted || (cutoff >= 3 && early <= est.value));
  return est;
}

SystoleEstimate systole(const SurfaceSpec& spec, int cutoff, int threads) {
  return systole(fn_to_generators(spec), spec, cutoff, threads);
}

}  // namespace systole
