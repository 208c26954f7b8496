#include "systole/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include <quadmath.h>

#include "systole/error.hpp"

namespace systole {

namespace {

using Real = __float128;

Real qsqrt(Real x) { return sqrtq(x); }
Real qexp(Real x) { return expq(x); }
Real qcosh(Real x) { return coshq(x); }
Real qabs(Real x) { return x < 0 ? -x : x; }

constexpr Mat2Q kRev{0, -1, 1, 0};
constexpr double kSampleSpacing = 0.1;
constexpr int kMaxNielsenMoves = 2000;
constexpr double kNielsenGain = 0.9;

Mat2Q unimodular(const Mat2Q& m) { return (1 / qsqrt(m.det())) * m; }

Mat2Q translation(Real tau) {
  const Real e = qexp(tau / 2);
  return {e, 0, 0, 1 / e};
}

Vec3 lower(const Vec3Q& v) { return {double(v[0]), double(v[1]), double(v[2])}; }

Vec3Q normalize(const Vec3Q& v) {
  const Real q = minkowski(v, v);
  const Real s = 1 / qsqrt(qabs(q));
  Vec3Q w{v[0] * s, v[1] * s, v[2] * s};
  if (q < 0 && w[1] - w[2] > 0) w = {-w[0], -w[1], -w[2]};
  return w;
}

// Lines A, B, C with <A,B> = -cab, <A,C> = -cac, <B,C> = -cbc.
std::array<Vec3Q, 3> triple(Real cab, Real cac, Real cbc) {
  const Vec3Q a{1, 0, 0};
  Vec3Q b, c;
  if (cab > 1) {
    const Real sab = qsqrt((cab - 1) * (cab + 1));
    b = {-cab, 0, sab};
    const Real x = -cac;
    const Real z = (cbc + cab * cac) / sab;
    c = {x, qsqrt(std::max<Real>(0, 1 - x * x + z * z)), z};
  } else {
    // A and B meet at an ideal point.
    b = {-1, 1, 1};
    const Real ymz = -(cac + cbc);
    const Real ypz = (cac - 1) * (cac + 1) / (cac + cbc);
    c = {-cac, (ypz + ymz) / 2, (ypz - ymz) / 2};
  }
  return {a, b, c};
}

Vec3Q eigenvector(const Mat2Q& m, Real lambda) {
  const Vec3Q u{m.b, lambda - m.a, 0};
  const Vec3Q v{lambda - m.d, m.c, 0};
  return u[0] * u[0] + u[1] * u[1] >= v[0] * v[0] + v[1] * v[1] ? u : v;
}

std::complex<double> moebius_l(const Mat2Q& m, std::complex<double> z) { return mobius(Mat2(m), z); }

bool region_on_left(const std::array<Vec3Q, 3>& t, int slot) {
  const Mat2Q k = detail::boundary_frame(detail::boundary_element(t, slot), t[(slot + 1) % 3]);
  return moebius_l(k.inverse(), z_from_point(detail::pants_interior_point(t))).real() < 0.0;
}

}  // namespace

double Representation::curve_trace(int c) const {
  return 2.0 * std::cosh(0.5 * curve_lengths.at(c));
}

Mat2 evaluate(const Representation& rep, const Word& word) {
  Mat2 m = Mat2::identity();
  const int n = static_cast<int>(rep.generators.size());
  for (int letter : word) {
    const int k = std::abs(letter);
    if (k == 0 || k > n) throw Error(Errc::domain, "word letter out of range");
    const Mat2& g = rep.generators[k - 1];
    m = m * (letter > 0 ? g : g.inverse());
  }
  return m;
}

Word inverse_word(const Word& word) {
  Word w(word.rbegin(), word.rend());
  for (int& x : w) x = -x;
  return w;
}

double relator_residual(const Representation& rep) {
  double worst = 0.0;
  for (const Word& r : rep.relators) worst = std::max(worst, distance_to_pm_identity(evaluate(rep, r)));
  return worst;
}

Representation conjugate(const Representation& rep, const Mat2& g) {
  Representation out = rep;
  const Mat2 gi = g.inverse();
  for (Mat2& x : out.generators) x = g * x * gi;
  for (Vec3& v : out.core_samples) v = act(g, v);
  out.core_radius += displacement_from_i(g);
  return out;
}

namespace detail {

std::array<Vec3Q, 3> pants_lines(const std::array<double, 3>& l) {
  std::array<Real, 3> c{};
  for (int i = 0; i < 3; ++i) {
    if (!(l[i] >= 0.0) || !std::isfinite(l[i])) throw Error(Errc::domain, "boundary length must be >= 0");
    c[i] = qcosh(Real(l[i]) / 2);
  }
  std::array<Vec3Q, 3> t;
  if (l[2] > 0.0 || (l[0] == 0.0 && l[1] == 0.0)) {
    const auto r = triple(c[2], c[1], c[0]);
    t = {r[0], r[1], r[2]};
  } else if (l[0] > 0.0) {
    const auto r = triple(c[0], c[2], c[1]);
    t = {r[2], r[0], r[1]};
  } else {
    const auto r = triple(c[1], c[0], c[2]);
    t = {r[1], r[2], r[0]};
  }
  for (int i = 0; i < 3; ++i) {
    if (l[i] > 0.0) {
      if (!region_on_left(t, i))
        for (Vec3Q& v : t) v[1] = -v[1];
      break;
    }
  }
  return t;
}

Mat2Q boundary_element(const std::array<Vec3Q, 3>& t, int slot) {
  return from_vec(t[(slot + 2) % 3]) * from_vec(t[(slot + 1) % 3]);
}

Mat2Q boundary_frame(const Mat2Q& g, const Vec3Q& line) {
  const Real tr = g.trace();
  const Real disc = tr * tr - 4;
  if (!(disc > 0)) throw Error(Errc::non_hyperbolic, "boundary element is not hyperbolic");
  const Real lp = (tr + (tr < 0 ? -qsqrt(disc) : qsqrt(disc))) / 2;
  const Real lm = 1 / lp;
  const Vec3Q vp = eigenvector(g, lp);
  const Vec3Q vm = eigenvector(g, lm);
  const Mat2Q x = from_vec(line);
  const Real w0 = x.a * vp[0] + x.b * vp[1];
  const Real w1 = x.c * vp[0] + x.d * vp[1];
  const Real mu = (w0 * vm[0] + w1 * vm[1]) / (vm[0] * vm[0] + vm[1] * vm[1]);
  const Real det = vp[0] * vm[1] - vp[1] * vm[0];
  const Real s = mu * det < 0 ? -1 : 1;
  const Real a = 1 / qsqrt(qabs(mu * det));
  const Real b = a * mu / s;
  return {a * vp[0], b * vm[0], a * vp[1], b * vm[1]};
}

Vec3 pants_interior_point(const std::array<Vec3Q, 3>& t) {
  return lower(normalize(Vec3Q{t[0][0] + t[1][0] + t[2][0], t[0][1] + t[1][1] + t[2][1],
                               t[0][2] + t[1][2] + t[2][2]}));
}

std::vector<Vec3> hexagon_vertices(const std::array<Vec3Q, 3>& t, const std::array<double, 3>& l) {
  std::vector<Vec3> out;
  for (int i = 0; i < 3; ++i) {
    const Vec3Q& p = t[(i + 1) % 3];
    const Vec3Q& q = t[(i + 2) % 3];
    if (l[i] > 0.0) {
      const Vec3Q axis = normalize(minkowski_cross(p, q));
      out.push_back(lower(normalize(minkowski_cross(axis, p))));
      out.push_back(lower(normalize(minkowski_cross(axis, q))));
      continue;
    }
    const Mat2Q par = from_vec(q) * from_vec(p);
    const Real lambda = par.trace() > 0 ? 1 : -1;
    const Vec3Q v = eigenvector(par, lambda);
    const Mat2Q x = from_vec(p);
    Vec3Q u = eigenvector(x, 1);
    if (qabs(u[0] * v[1] - u[1] * v[0]) < Real(1e-8) * qsqrt((u[0] * u[0] + u[1] * u[1]) * (v[0] * v[0] + v[1] * v[1])))
      u = eigenvector(x, -1);
    Mat2Q k{v[0], u[0], v[1], u[1]};
    if (k.det() < 0) k = {k.a, -k.b, k.c, -k.d};
    k = unimodular(k);
    const Mat2Q kk = k.inverse() * par * k;
    const double tau = double(kk.b * (kk.a < 0 ? -1 : 1));
    const double h = 0.5 * std::fabs(tau);
    out.push_back(point_from_z(moebius_l(k, {0.0, h})));
    out.push_back(point_from_z(moebius_l(k, {0.5 * tau, h})));
  }
  return out;
}

std::vector<Vec3> sample_polygon(const std::vector<Vec3>& vs, double spacing, double& mesh) {
  // Straight lines in the Klein model are geodesics, so barycentric grids of
  // a fan triangulation cover the polygon.
  auto klein = [](const Vec3& p) { return std::array<double, 2>{p[0] / p[2], p[1] / p[2]}; };
  auto lift = [](double x, double y) { return normalize_minkowski({x, y, 1.0}); };
  std::array<double, 2> c{0.0, 0.0};
  for (const Vec3& v : vs) {
    const auto k = klein(v);
    c[0] += k[0] / vs.size();
    c[1] += k[1] / vs.size();
  }
  const Vec3 cc = lift(c[0], c[1]);
  std::vector<Vec3> out;
  mesh = 0.0;
  for (std::size_t t = 0; t < vs.size(); ++t) {
    const Vec3& v0 = vs[t];
    const Vec3& v1 = vs[(t + 1) % vs.size()];
    const auto p = klein(v0);
    const auto q = klein(v1);
    const double side = std::max({point_distance(cc, v0), point_distance(cc, v1), point_distance(v0, v1)});
    const int n = std::max(1, static_cast<int>(std::ceil(side / spacing)));
    auto at = [&](int i, int j) {
      const double u = static_cast<double>(i) / n, w = static_cast<double>(j) / n;
      return lift(c[0] + u * (p[0] - c[0]) + w * (q[0] - c[0]), c[1] + u * (p[1] - c[1]) + w * (q[1] - c[1]));
    };
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; i + j <= n; ++j) {
        const Vec3 x = at(i, j);
        out.push_back(x);
        if (i + j < n) {
          mesh = std::max({mesh, point_distance(x, at(i + 1, j)), point_distance(x, at(i, j + 1)),
                           point_distance(at(i + 1, j), at(i, j + 1))});
        }
      }
    }
  }
  return out;
}

}  // namespace detail

namespace {

Vec3 minimax_center(const std::vector<Vec3>& pts) {
  Vec3 c = pts.front();
  for (int k = 1; k <= 400; ++k) {
    std::size_t far = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d = point_distance(c, pts[i]);
      if (d > best) best = d, far = i;
    }
    c = normalize_minkowski(geodesic_point(c, pts[far], 1.0 / (k + 1.0)));
  }
  return c;
}

// Pants of least eccentricity in the adjacency graph, so placements stay
// close to the root.
int center_pants(int np, const std::vector<std::vector<int>>& adj) {
  int best = 0, best_ecc = np + 1;
  for (int r = 0; r < np; ++r) {
    std::vector<int> dist(np, -1);
    std::deque<int> q{r};
    dist[r] = 0;
    int ecc = 0;
    while (!q.empty()) {
      const int p = q.front();
      q.pop_front();
      ecc = std::max(ecc, dist[p]);
      for (int n : adj[p])
        if (dist[n] < 0) dist[n] = dist[p] + 1, q.push_back(n);
    }
    if (std::find(dist.begin(), dist.end(), -1) != dist.end())
      throw Error(Errc::disconnected, "pants graph is disconnected");
    if (ecc < best_ecc) best_ecc = ecc, best = r;
  }
  return best;
}

Word reduce_append(Word out, const Word& w) {
  for (int l : w) {
    if (!out.empty() && out.back() == -l) out.pop_back();
    else out.push_back(l);
  }
  return out;
}

struct Draft {
  std::vector<Mat2Q> generators;
  std::vector<Word> relators, curve_words, cusp_words;
};

// Steepest descent on |x|_F^2, one move at a time; generators that become
// trivial are dropped and every word is rewritten.
void reduce(Draft& dr) {
  const int n = static_cast<int>(dr.generators.size());
  std::vector<Word> expr(n);  // original generator k+1 in current generators
  for (int k = 0; k < n; ++k) expr[k] = {k + 1};
  auto substitute = [](const Word& w, int x, const Word& by) {
    const Word inv = inverse_word(by);
    Word out;
    for (int l : w) out = reduce_append(std::move(out), l == x ? by : (l == -x ? inv : Word{l}));
    return out;
  };
  std::vector<bool> alive(n, true);
  for (int step = 0; step < kMaxNielsenMoves; ++step) {
    Real best = Real(kNielsenGain);
    int bx = -1;
    Mat2Q bm;
    Word bw;
    for (int x = 0; x < n; ++x) {
      if (!alive[x]) continue;
      const Mat2Q& gx = dr.generators[x];
      const Real cx = gx.frobenius_sq();
      for (int y = 0; y < n; ++y) {
        if (x == y || !alive[y]) continue;
        const Mat2Q& gy = dr.generators[y];
        const Mat2Q gyi = gy.inverse();
        // Candidate x' and the old x as a word in x'.
        const std::array<std::pair<Mat2Q, Word>, 4> moves{{{gx * gy, {x + 1, -(y + 1)}},
                                                           {gx * gyi, {x + 1, y + 1}},
                                                           {gy * gx, {-(y + 1), x + 1}},
                                                           {gyi * gx, {y + 1, x + 1}}}};
        for (const auto& [m, old_x] : moves) {
          const Real ratio = m.frobenius_sq() / cx;
          if (ratio < best) best = ratio, bx = x, bm = m, bw = old_x;
        }
      }
    }
    if (bx < 0) break;
    dr.generators[bx] = unimodular(bm);
    const Mat2 approx(dr.generators[bx]);
    if (distance_to_pm_identity(approx) < 1e-6) {
      alive[bx] = false;
      bw.erase(std::remove(bw.begin(), bw.end(), bx + 1), bw.end());
    }
    for (Word& w : expr) w = substitute(w, bx + 1, bw);
  }
  std::vector<int> renum(n + 1, 0);
  std::vector<Mat2Q> gens;
  for (int k = 0; k < n; ++k)
    if (alive[k]) gens.push_back(dr.generators[k]), renum[k + 1] = static_cast<int>(gens.size());
  for (Word& w : expr) {
    Word out;
    for (int l : w)
      if (const int r = renum[std::abs(l)]; r != 0) out.push_back(l > 0 ? r : -r);
    w = std::move(out);
  }
  auto rewrite = [&](const Word& w) {
    Word out;
    for (int l : w) out = reduce_append(std::move(out), l > 0 ? expr[l - 1] : inverse_word(expr[-l - 1]));
    return out;
  };
  dr.generators = std::move(gens);
  for (auto* words : {&dr.relators, &dr.curve_words, &dr.cusp_words})
    for (Word& w : *words) w = rewrite(w);
}

}  // namespace

Representation nielsen_reduce(const Representation& rep) {
  Draft dr;
  for (const Mat2& g : rep.generators) dr.generators.push_back(Mat2Q(g));
  dr.relators = rep.relators;
  dr.curve_words = rep.curve_words;
  dr.cusp_words = rep.cusp_words;
  reduce(dr);
  Representation out = rep;
  out.generators.clear();
  for (const Mat2Q& g : dr.generators) out.generators.push_back(Mat2(g));
  out.relators = dr.relators;
  out.curve_words = dr.curve_words;
  out.cusp_words = dr.cusp_words;
  return out;
}

Representation fn_to_generators(const SurfaceSpec& spec) {
  validate(spec);
  for (SocketId s : spec.boundary_sockets())
    if (spec.lengths[s] > 0.0)
      throw Error(Errc::unsupported, "geodesic boundary '" + spec.socket_name(s) +
                                         "': only closed and cusped surfaces have a lattice");

  const int np = static_cast<int>(spec.pants.size());
  std::vector<std::array<double, 3>> len(np);
  std::vector<std::array<Vec3Q, 3>> local(np);
  std::vector<std::array<Mat2Q, 3>> frame(np);
  for (int p = 0; p < np; ++p) {
    for (int i = 0; i < 3; ++i) len[p][i] = spec.lengths[3 * p + i];
    local[p] = detail::pants_lines(len[p]);
    for (int i = 0; i < 3; ++i)
      if (len[p][i] > 0.0)
        frame[p][i] = detail::boundary_frame(detail::boundary_element(local[p], i), local[p][(i + 1) % 3]);
  }

  std::vector<int> partner(spec.socket_count(), -1), edge_of(spec.socket_count(), -1);
  std::vector<std::vector<int>> adj(np);
  for (int e = 0; e < spec.curve_count(); ++e) {
    const Gluing& g = spec.gluings[e];
    partner[g.a] = g.b;
    partner[g.b] = g.a;
    edge_of[g.a] = edge_of[g.b] = e;
    adj[pants_of(g.a)].push_back(pants_of(g.b));
    adj[pants_of(g.b)].push_back(pants_of(g.a));
  }

  Draft dr;
  std::vector<int> letter(spec.socket_count(), 0);
  std::vector<bool> placed(np, false), tree(spec.curve_count(), false);
  std::vector<Mat2Q> where(np);
  auto glue_map = [&](SocketId s, SocketId o, double twist) {
    const Real tau = Real(twist) * Real(spec.lengths[s]);
    return frame[pants_of(s)][slot_of(s)] * translation(tau) * kRev * frame[pants_of(o)][slot_of(o)].inverse();
  };

  // Spanning tree of pants: a child is placed across the glued boundary and
  // shares its holonomy (inverted) with the parent.
  std::vector<SocketId> holonomy;  // socket of each boundary generator
  const int root = center_pants(np, adj);
  std::deque<int> queue{root};
  placed[root] = true;
  where[root] = Mat2Q::identity();
  while (!queue.empty()) {
    const int p = queue.front();
    queue.pop_front();
    for (int i = 0; i < 3; ++i) {
      const SocketId s = 3 * p + i;
      if (letter[s] == 0) {
        holonomy.push_back(s);
        letter[s] = static_cast<int>(holonomy.size());
      }
      const int e = edge_of[s];
      if (e < 0) continue;
      const SocketId o = partner[s];
      const int q = pants_of(o);
      if (placed[q]) continue;
      tree[e] = true;
      placed[q] = true;
      where[q] = unimodular(where[p] * glue_map(s, o, spec.gluings[e].twist.value()));
      letter[o] = -letter[s];
      queue.push_back(q);
    }
  }

  // A fundamental set: each placed pants as a hexagon and its mirror image.
  Representation rep;
  std::vector<Vec3> verts;
  for (int p = 0; p < np; ++p) {
    std::array<Vec3Q, 3> lines;
    for (int i = 0; i < 3; ++i) lines[i] = act(where[p], local[p][i]);
    const auto hex = detail::hexagon_vertices(lines, len[p]);
    std::vector<Vec3> mirror;
    for (const Vec3& v : hex) mirror.push_back(reflect(lower(lines[0]), v));
    for (const std::vector<Vec3>* poly : {&hex, static_cast<const std::vector<Vec3>*>(&mirror)}) {
      double mesh = 0.0;
      const auto pts = detail::sample_polygon(*poly, kSampleSpacing, mesh);
      rep.core_samples.insert(rep.core_samples.end(), pts.begin(), pts.end());
      rep.core_mesh = std::max(rep.core_mesh, mesh);
      verts.insert(verts.end(), poly->begin(), poly->end());
    }
  }

  // Move the minimax center of the fundamental set to i before forming any
  // generator.
  const auto zc = z_from_point(minimax_center(verts));
  const Real r = qsqrt(Real(zc.imag()));
  const Mat2Q to_i = Mat2Q{r, Real(zc.real()) / r, 0, 1 / r}.inverse();
  for (Mat2Q& w : where) w = unimodular(to_i * w);
  const Mat2 to_i_d(to_i);
  for (Vec3& v : rep.core_samples) v = act(to_i_d, v);
  const Vec3 base = point_from_z({0.0, 1.0});
  for (const Vec3& v : verts) rep.core_radius = std::max(rep.core_radius, point_distance(base, act(to_i_d, v)));

  for (SocketId s : holonomy) {
    const Mat2Q& w = where[pants_of(s)];
    dr.generators.push_back(unimodular(w * detail::boundary_element(local[pants_of(s)], slot_of(s)) * w.inverse()));
  }
  for (int p = 0; p < np; ++p) dr.relators.push_back({letter[3 * p + 2], letter[3 * p + 1], letter[3 * p]});
  for (int e = 0; e < spec.curve_count(); ++e) {
    if (tree[e]) continue;
    const Gluing& g = spec.gluings[e];
    const Mat2Q t = where[pants_of(g.a)] * glue_map(g.a, g.b, g.twist.value()) * where[pants_of(g.b)].inverse();
    dr.generators.push_back(unimodular(t));
    const int k = static_cast<int>(dr.generators.size());
    dr.relators.push_back({k, letter[g.b], -k, letter[g.a]});
  }
  for (int e = 0; e < spec.curve_count(); ++e) {
    dr.curve_words.push_back({letter[spec.gluings[e].a]});
    rep.curve_lengths.push_back(spec.lengths[spec.gluings[e].a]);
  }
  for (SocketId s : spec.boundary_sockets()) dr.cusp_words.push_back({letter[s]});

  reduce(dr);
  for (const Mat2Q& g : dr.generators) rep.generators.push_back(Mat2(g));
  rep.relators = std::move(dr.relators);
  rep.curve_words = std::move(dr.curve_words);
  rep.cusp_words = std::move(dr.cusp_words);
  return rep;
}

}  // namespace systole
