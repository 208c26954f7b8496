#include "systole/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_set>

#include "systole/error.hpp"

namespace systole {

namespace {

bool lengths_match(double x, double y) {
  return std::fabs(x - y) <= 1e-12 * std::max(std::fabs(x), std::fabs(y));
}

/// gluing index per socket, -1 for boundaries. Assumes indices are in range.
std::vector<int> socket_gluing_table(const SurfaceSpec& spec) {
  std::vector<int> table(spec.lengths.size(), -1);
  for (int g = 0; g < spec.curve_count(); ++g) {
    table.at(spec.gluings[g].a) = g;
    table.at(spec.gluings[g].b) = g;
  }
  return table;
}

int other_end(const Gluing& g, SocketId s) { return g.a == s ? g.b : g.a; }

bool connected_without(const SurfaceSpec& spec, int skipped_gluing) {
  const int p = static_cast<int>(spec.pants.size());
  if (p == 0) return false;
  std::vector<std::vector<int>> adj(p);
  for (int g = 0; g < spec.curve_count(); ++g) {
    if (g == skipped_gluing) continue;
    const int u = pants_of(spec.gluings[g].a);
    const int v = pants_of(spec.gluings[g].b);
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(p, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == p;
}

void check_curve(const SurfaceSpec& spec, CurveRef curve) {
  if (curve.index < 0 || curve.index >= spec.curve_count()) {
    throw Error(Errc::invalid_curve, "curve index " + std::to_string(curve.index) +
                                         " does not name a gluing");
  }
}

std::string unique_name(const std::string& base, const std::unordered_set<std::string>& taken) {
  std::string name = base;
  while (taken.count(name)) name += "'";
  return name;
}

std::vector<std::string> materialized_labels(const SurfaceSpec& spec) {
  std::vector<std::string> out;
  out.reserve(spec.gluings.size());
  for (int i = 0; i < spec.curve_count(); ++i) out.push_back(spec.curve_name(i));
  return out;
}

/// Disjoint union; b's sockets are shifted by 3 * a.pants.size() and renamed
/// on collision.
SurfaceSpec disjoint_union(const SurfaceSpec& a, const SurfaceSpec& b) {
  SurfaceSpec out = a;
  const int offset = static_cast<int>(a.lengths.size());
  std::unordered_set<std::string> names;
  for (const auto& p : a.pants) names.insert(p.begin(), p.end());
  for (const auto& p : b.pants) {
    std::array<std::string, 3> renamed;
    for (int k = 0; k < 3; ++k) {
      renamed[k] = unique_name(p[k], names);
      names.insert(renamed[k]);
    }
    out.pants.push_back(renamed);
  }
  out.lengths.insert(out.lengths.end(), b.lengths.begin(), b.lengths.end());
  for (const Gluing& g : b.gluings) out.gluings.push_back({g.a + offset, g.b + offset, g.twist});
  if (!a.labels.empty() || !b.labels.empty()) {
    out.labels = materialized_labels(a);
    std::unordered_set<std::string> taken(out.labels.begin(), out.labels.end());
    for (const std::string& l : materialized_labels(b)) {
      out.labels.push_back(unique_name(l, taken));
      taken.insert(out.labels.back());
    }
  }
  return out;
}

void add_gluing(SurfaceSpec& spec, SocketId x, SocketId y, TwistParam twist,
                const std::string& label_hint) {
  const double lx = spec.lengths.at(x);
  const double ly = spec.lengths.at(y);
  if (lx == 0.0 || ly == 0.0) throw Error(Errc::cusp_glued, "cannot glue a cusp socket");
  if (!lengths_match(lx, ly)) {
    std::ostringstream os;
    os.precision(17);
    os << "glued lengths differ: " << lx << " vs " << ly;
    throw Error(Errc::length_mismatch, os.str());
  }
  if (spec.gluing_of(x) || spec.gluing_of(y)) {
    throw Error(Errc::invalid_spec, "socket is already glued");
  }
  spec.gluings.push_back({x, y, twist});
  if (!spec.labels.empty()) {
    std::unordered_set<std::string> taken(spec.labels.begin(), spec.labels.end());
    spec.labels.push_back(unique_name(label_hint, taken));
  }
}

SurfaceSpec remove_gluing(const SurfaceSpec& spec, int index) {
  SurfaceSpec out = spec;
  out.gluings.erase(out.gluings.begin() + index);
  if (!out.labels.empty()) out.labels.erase(out.labels.begin() + index);
  return out;
}

/// Drops one pants and every gluing touching it; sockets are renumbered.
SurfaceSpec remove_pants(const SurfaceSpec& spec, int victim) {
  SurfaceSpec out;
  auto remap = [&](SocketId s) { return pants_of(s) > victim ? s - 3 : s; };
  for (int p = 0; p < static_cast<int>(spec.pants.size()); ++p) {
    if (p == victim) continue;
    out.pants.push_back(spec.pants[p]);
    for (int k = 0; k < 3; ++k) out.lengths.push_back(spec.lengths[3 * p + k]);
  }
  for (int g = 0; g < spec.curve_count(); ++g) {
    const Gluing& gl = spec.gluings[g];
    if (pants_of(gl.a) == victim || pants_of(gl.b) == victim) continue;
    out.gluings.push_back({remap(gl.a), remap(gl.b), gl.twist});
    if (!spec.labels.empty()) out.labels.push_back(spec.labels[g]);
  }
  return out;
}

/// The single positive-length boundary of a construction remainder R.
void check_remainder(const SurfaceSpec& r, SocketId boundary) {
  validate(r);
  if (boundary < 0 || boundary >= r.socket_count() || r.gluing_of(boundary)) {
    throw Error(Errc::invalid_spec, "remainder boundary socket is not a boundary");
  }
  for (SocketId s : r.boundary_sockets()) {
    if (s == boundary) {
      if (!(r.lengths[s] > 0.0)) throw Error(Errc::signature_mismatch, "remainder boundary is a cusp");
    } else if (r.lengths[s] != 0.0) {
      throw Error(Errc::signature_mismatch,
                  "remainder must have one geodesic boundary and cusps elsewhere");
    }
  }
}

std::vector<SocketId> geodesic_boundaries(const SurfaceSpec& spec) {
  std::vector<SocketId> out;
  for (SocketId s : spec.boundary_sockets()) {
    if (spec.lengths[s] > 0.0) out.push_back(s);
  }
  return out;
}

std::string hex_bits(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

}  // namespace

std::string to_string(const Signature& s) {
  return "(" + std::to_string(s.genus) + "," + std::to_string(s.boundaries) + "," +
         std::to_string(s.cusps) + ")";
}

SocketId SurfaceSpec::socket_by_name(const std::string& name) const {
  for (int p = 0; p < static_cast<int>(pants.size()); ++p) {
    for (int k = 0; k < 3; ++k) {
      if (pants[p][k] == name) return 3 * p + k;
    }
  }
  throw Error(Errc::invalid_spec, "unknown socket '" + name + "'");
}

std::optional<int> SurfaceSpec::gluing_of(SocketId s) const {
  for (int g = 0; g < curve_count(); ++g) {
    if (gluings[g].a == s || gluings[g].b == s) return g;
  }
  return std::nullopt;
}

std::vector<SocketId> SurfaceSpec::boundary_sockets() const {
  std::vector<char> glued(lengths.size(), 0);
  for (const Gluing& g : gluings) {
    if (g.a >= 0 && g.a < socket_count()) glued[g.a] = 1;
    if (g.b >= 0 && g.b < socket_count()) glued[g.b] = 1;
  }
  std::vector<SocketId> out;
  for (int s = 0; s < socket_count(); ++s) {
    if (!glued[s]) out.push_back(s);
  }
  return out;
}

std::string SurfaceSpec::curve_name(int curve) const {
  if (!labels.empty()) return labels.at(curve);
  return "c" + std::to_string(curve);
}

CurveRef find_curve(const SurfaceSpec& spec, const std::string& name) {
  for (int i = 0; i < spec.curve_count(); ++i) {
    if (spec.curve_name(i) == name) return {i};
  }
  throw Error(Errc::invalid_curve, "no curve named '" + name + "'");
}

double curve_length(const SurfaceSpec& spec, CurveRef curve) {
  check_curve(spec, curve);
  return spec.lengths.at(spec.gluings[curve.index].a);
}

double min_pants_curve_length(const SurfaceSpec& spec) {
  double m = std::numeric_limits<double>::infinity();
  for (const Gluing& g : spec.gluings) m = std::min(m, spec.lengths.at(g.a));
  return m;
}

Signature validate(const SurfaceSpec& spec) {
  const int p = static_cast<int>(spec.pants.size());
  if (p == 0) throw Error(Errc::non_hyperbolic_signature, "spec has no pants");
  if (static_cast<int>(spec.lengths.size()) != 3 * p) {
    throw Error(Errc::invalid_spec, "expected " + std::to_string(3 * p) + " socket lengths, got " +
                                        std::to_string(spec.lengths.size()));
  }
  std::unordered_set<std::string> names;
  for (const auto& pants : spec.pants) {
    for (const std::string& n : pants) {
      if (n.empty()) throw Error(Errc::invalid_spec, "empty socket name");
      if (!names.insert(n).second) throw Error(Errc::invalid_spec, "duplicate socket name '" + n + "'");
    }
  }
  for (int s = 0; s < 3 * p; ++s) {
    const double l = spec.lengths[s];
    if (!std::isfinite(l) || l < 0.0) {
      throw Error(Errc::invalid_spec, "socket '" + spec.socket_name(s) + "' has invalid length");
    }
  }
  if (!spec.labels.empty()) {
    if (spec.labels.size() != spec.gluings.size()) {
      throw Error(Errc::invalid_spec, "labels must name every gluing");
    }
    std::unordered_set<std::string> seen;
    for (const std::string& l : spec.labels) {
      if (l.empty() || !seen.insert(l).second) throw Error(Errc::invalid_spec, "labels must be unique and non-empty");
    }
  }
  std::vector<int> used(3 * p, 0);
  for (const Gluing& g : spec.gluings) {
    if (g.a < 0 || g.a >= 3 * p || g.b < 0 || g.b >= 3 * p) {
      throw Error(Errc::invalid_spec, "gluing references a socket out of range");
    }
    if (g.a == g.b) throw Error(Errc::invalid_spec, "socket glued to itself");
    if (++used[g.a] > 1 || ++used[g.b] > 1) {
      throw Error(Errc::invalid_spec, "socket appears in more than one gluing");
    }
    const double la = spec.lengths[g.a];
    const double lb = spec.lengths[g.b];
    if (la == 0.0 || lb == 0.0) {
      throw Error(Errc::cusp_glued, "gluing '" + spec.socket_name(g.a) + "'-'" +
                                        spec.socket_name(g.b) + "' involves a cusp");
    }
    if (!lengths_match(la, lb)) {
      throw Error(Errc::length_mismatch, "gluing '" + spec.socket_name(g.a) + "'-'" +
                                             spec.socket_name(g.b) + "' joins different lengths");
    }
  }
  if (!connected_without(spec, -1)) throw Error(Errc::disconnected, "pants graph is disconnected");

  Signature sig;
  for (int s = 0; s < 3 * p; ++s) {
    if (used[s]) continue;
    ++sig.boundaries;
    if (spec.lengths[s] == 0.0) ++sig.cusps;
  }
  // Each pants contributes Euler characteristic -1.
  sig.genus = (2 - sig.boundaries + p) / 2;
  if (!sig.is_hyperbolic() || sig.pants_count() != p) {
    throw Error(Errc::non_hyperbolic_signature, "signature " + to_string(sig) + " is not hyperbolic");
  }
  return sig;
}

bool is_nonseparating(const SurfaceSpec& spec, CurveRef curve) {
  check_curve(spec, curve);
  return connected_without(spec, curve.index);
}

CutSurface cut_along(const SurfaceSpec& spec, CurveRef curve) {
  validate(spec);
  if (!is_nonseparating(spec, curve)) {
    throw Error(Errc::separating_curve, "curve '" + spec.curve_name(curve.index) + "' is separating");
  }
  const Gluing g = spec.gluings[curve.index];
  return {remove_gluing(spec, curve.index), g.a, g.b, g.twist};
}

SurfaceSpec glue_pair(const SurfaceSpec& a, SocketId socket_a, const SurfaceSpec& b,
                      SocketId socket_b, TwistParam twist) {
  if (socket_a < 0 || socket_a >= a.socket_count() || socket_b < 0 || socket_b >= b.socket_count()) {
    throw Error(Errc::invalid_spec, "socket out of range");
  }
  SurfaceSpec out = disjoint_union(a, b);
  add_gluing(out, socket_a, socket_b + a.socket_count(), twist, "c" + std::to_string(out.curve_count()));
  return out;
}

SurfaceSpec glue_self(const SurfaceSpec& spec, SocketId first, SocketId second, TwistParam twist) {
  if (first < 0 || first >= spec.socket_count() || second < 0 || second >= spec.socket_count() ||
      first == second) {
    throw Error(Errc::invalid_spec, "invalid socket pair");
  }
  SurfaceSpec out = spec;
  add_gluing(out, first, second, twist, "c" + std::to_string(out.curve_count()));
  return out;
}

CoverResult cyclic_cover(const SurfaceSpec& spec, CurveRef curve, int k,
                         const std::vector<TwistParam>& twists) {
  if (k < 2) throw Error(Errc::domain, "cover order must be at least 2");
  if (static_cast<int>(twists.size()) != k) {
    throw Error(Errc::domain, "cover needs exactly k twist parameters");
  }
  const CutSurface cut = cut_along(spec, curve);
  const std::string base_label = spec.curve_name(curve.index);
  const int sockets = spec.socket_count();

  CoverResult result;
  SurfaceSpec& out = result.spec;
  std::vector<std::string> names = materialized_labels(spec);
  names.erase(names.begin() + curve.index);
  for (int i = 0; i < k; ++i) {
    const std::string suffix = "@" + std::to_string(i + 1);
    for (const auto& p : cut.spec.pants) out.pants.push_back({p[0] + suffix, p[1] + suffix, p[2] + suffix});
    out.lengths.insert(out.lengths.end(), cut.spec.lengths.begin(), cut.spec.lengths.end());
    for (int g = 0; g < cut.spec.curve_count(); ++g) {
      const Gluing& gl = cut.spec.gluings[g];
      out.gluings.push_back({gl.a + i * sockets, gl.b + i * sockets, gl.twist});
      out.labels.push_back(names[g] + suffix);
    }
  }
  std::unordered_set<std::string> taken(out.labels.begin(), out.labels.end());
  result.normal = true;
  for (int i = 0; i < k; ++i) {
    const int next = (i + 1) % k;
    out.gluings.push_back({cut.first + i * sockets, cut.second + next * sockets, twists[i]});
    out.labels.push_back(unique_name(base_label + "@" + std::to_string(i + 1), taken));
    taken.insert(out.labels.back());
    if (twists[i].value() != cut.twist.value()) result.normal = false;
  }
  validate(out);
  return result;
}

CoverResult cyclic_cover(const SurfaceSpec& spec, CurveRef curve, int k) {
  check_curve(spec, curve);
  if (k < 2) throw Error(Errc::domain, "cover order must be at least 2");
  return cyclic_cover(spec, curve, k, std::vector<TwistParam>(k, spec.gluings[curve.index].twist));
}

SurfaceSpec insert_fpiece(const SurfaceSpec& spec, CurveRef curve, const SurfaceSpec& fpiece,
                          std::array<TwistParam, 2> twists) {
  const CutSurface cut = cut_along(spec, curve);
  const Signature fsig = validate(fpiece);
  if (!(fsig == Signature{1, 2, 0})) {
    throw Error(Errc::signature_mismatch, "F-piece must have signature (1,2,0), got " + to_string(fsig));
  }
  const std::vector<SocketId> fb = geodesic_boundaries(fpiece);
  const double len = curve_length(spec, curve);
  for (SocketId s : fb) {
    if (!lengths_match(fpiece.lengths[s], len)) {
      throw Error(Errc::length_mismatch, "F-piece boundary length differs from the cut curve");
    }
  }
  SurfaceSpec out = disjoint_union(cut.spec, fpiece);
  const int offset = cut.spec.socket_count();
  add_gluing(out, cut.first, fb[0] + offset, twists[0], spec.curve_name(curve.index) + "/1");
  add_gluing(out, cut.second, fb[1] + offset, twists[1], spec.curve_name(curve.index) + "/2");
  validate(out);
  return out;
}

ExcisedSurface excise_cusp_pair(const SurfaceSpec& spec, CurveRef curve) {
  validate(spec);
  check_curve(spec, curve);
  if (is_nonseparating(spec, curve)) {
    throw Error(Errc::precondition, "curve must be separating");
  }
  const Gluing g = spec.gluings[curve.index];
  auto bounds_cusp_pair = [&](SocketId s) {
    const int p = pants_of(s);
    for (int k = 0; k < 3; ++k) {
      const SocketId t = 3 * p + k;
      if (t == s) continue;
      if (spec.gluing_of(t) || spec.lengths[t] != 0.0) return false;
    }
    return true;
  };
  SocketId victim_side;
  SocketId kept;
  if (bounds_cusp_pair(g.a)) {
    victim_side = g.a;
    kept = g.b;
  } else if (bounds_cusp_pair(g.b)) {
    victim_side = g.b;
    kept = g.a;
  } else {
    throw Error(Errc::signature_mismatch, "curve does not bound a Y-piece with two cusps");
  }
  const int victim = pants_of(victim_side);
  ExcisedSurface out{remove_pants(spec, victim), pants_of(kept) > victim ? kept - 3 : kept};
  validate(out.remainder);
  return out;
}

SurfaceSpec double_along(const SurfaceSpec& remainder, SocketId boundary, TwistParam twist) {
  check_remainder(remainder, boundary);
  return glue_pair(remainder, boundary, remainder, boundary, twist);
}

SurfaceSpec double_with_fpiece(const SurfaceSpec& remainder, SocketId boundary,
                               const SurfaceSpec& fpiece, std::array<TwistParam, 2> twists) {
  check_remainder(remainder, boundary);
  const Signature fsig = validate(fpiece);
  if (!(fsig == Signature{1, 2, 0})) {
    throw Error(Errc::signature_mismatch, "F-piece must have signature (1,2,0), got " + to_string(fsig));
  }
  const std::vector<SocketId> fb = geodesic_boundaries(fpiece);
  SurfaceSpec left = glue_pair(remainder, boundary, fpiece, fb[0], twists[0]);
  const SocketId free_f = fb[1] + remainder.socket_count();
  SurfaceSpec out = glue_pair(left, free_f, remainder, boundary, twists[1]);
  validate(out);
  return out;
}

SurfaceSpec attach_qpiece(const SurfaceSpec& remainder, SocketId boundary,
                          const SurfaceSpec& qpiece, TwistParam twist) {
  check_remainder(remainder, boundary);
  const Signature qsig = validate(qpiece);
  if (!(qsig == Signature{1, 1, 0})) {
    throw Error(Errc::signature_mismatch, "Q-piece must have signature (1,1,0), got " + to_string(qsig));
  }
  SurfaceSpec out = glue_pair(remainder, boundary, qpiece, geodesic_boundaries(qpiece).front(), twist);
  validate(out);
  return out;
}

std::string canonical_form(const SurfaceSpec& spec) {
  validate(spec);
  const int p = static_cast<int>(spec.pants.size());
  const std::vector<int> glue = socket_gluing_table(spec);
  std::string best;
  for (int root = 0; root < p; ++root) {
    for (int rot = 0; rot < 3; ++rot) {
      std::vector<int> order{root};
      std::vector<int> index(p, -1);
      std::vector<int> rotation(p, 0);
      index[root] = 0;
      rotation[root] = rot;
      for (std::size_t head = 0; head < order.size(); ++head) {
        const int u = order[head];
        for (int k = 0; k < 3; ++k) {
          const SocketId s = 3 * u + (rotation[u] + k) % 3;
          if (glue[s] < 0) continue;
          const SocketId t = other_end(spec.gluings[glue[s]], s);
          const int v = pants_of(t);
          if (index[v] >= 0) continue;
          index[v] = static_cast<int>(order.size());
          rotation[v] = slot_of(t);
          order.push_back(v);
        }
      }
      std::string code;
      for (int u : order) {
        code += '[';
        for (int k = 0; k < 3; ++k) {
          const SocketId s = 3 * u + (rotation[u] + k) % 3;
          if (glue[s] < 0) {
            code += "B" + hex_bits(spec.lengths[s]);
          } else {
            const SocketId t = other_end(spec.gluings[glue[s]], s);
            const int v = pants_of(t);
            const int slot = (slot_of(t) - rotation[v] + 3) % 3;
            code += "G" + std::to_string(index[v]) + "." + std::to_string(slot) + ":" +
                    hex_bits(spec.lengths[s]) + ":" + hex_bits(spec.gluings[glue[s]].twist.value());
          }
          code += ';';
        }
        code += ']';
      }
      if (best.empty() || code < best) best = std::move(code);
    }
  }
  return best;
}

bool isomorphic(const SurfaceSpec& a, const SurfaceSpec& b) {
  return a.pants.size() == b.pants.size() && canonical_form(a) == canonical_form(b);
}

}  // namespace systole
