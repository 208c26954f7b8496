#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "systole/builders.hpp"
#include "systole/error.hpp"
#include "systole/surface.hpp"
#include "systole/surface_io.hpp"

using namespace systole;

namespace {

// Genus 1 with four cusps: a two-holed torus with a two-cusp pants on
// each hole. Curves x and y are separating and each bound a cusp pair.
const char* kTorusFourCusps = R"({
  "pants": [["a0","b0","x0"],["a1","b1","y0"],["x1","k1","k2"],["y1","k3","k4"]],
  "gluings": [{"a":"a0","b":"a1","twist":0.1},{"a":"b0","b":"b1","twist":0.0},
              {"a":"x0","b":"x1","twist":0.0},{"a":"y0","b":"y1","twist":0.2}],
  "lengths": {"a0":2.0,"b0":2.5,"x0":3.6,"a1":2.0,"b1":2.5,"y0":3.6,
              "x1":3.6,"k1":0,"k2":0,"y1":3.6,"k3":0,"k4":0},
  "labels": ["a","b","x","y"]
})";

// Independent separation test: a curve is non-separating iff its edge of
// the pants graph lies on a cycle, i.e. it appears in some fundamental
// cycle over GF(2).
bool nonseparating_mod2(const SurfaceSpec& s, int curve) {
  const int p = static_cast<int>(s.pants.size());
  std::vector<int> parent(p);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<bool> tree(s.gluings.size(), false);
  for (std::size_t e = 0; e < s.gluings.size(); ++e) {
    const int u = find(pants_of(s.gluings[e].a)), v = find(pants_of(s.gluings[e].b));
    if (u != v) parent[u] = v, tree[e] = true;
  }
  if (!tree[curve]) return true;
  // Tree edge: some non-tree edge's fundamental cycle must contain it.
  for (std::size_t e = 0; e < s.gluings.size(); ++e) {
    if (tree[e]) continue;
    // path in the tree between the endpoints, via BFS over tree edges
    const int src = pants_of(s.gluings[e].a), dst = pants_of(s.gluings[e].b);
    std::vector<int> via(p, -2);
    std::vector<int> queue{src};
    via[src] = -1;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const int u = queue[q];
      for (std::size_t f = 0; f < s.gluings.size(); ++f) {
        if (!tree[f]) continue;
        const int x = pants_of(s.gluings[f].a), y = pants_of(s.gluings[f].b);
        const int w = x == u ? y : (y == u ? x : -1);
        if (w < 0 || via[w] != -2) continue;
        via[w] = static_cast<int>(f);
        queue.push_back(w);
      }
    }
    for (int v = dst; via[v] >= 0;) {
      const int f = via[v];
      if (f == curve) return true;
      v = pants_of(s.gluings[f].a) == v ? pants_of(s.gluings[f].b) : pants_of(s.gluings[f].a);
    }
  }
  return false;
}

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::domain;
}

}  // namespace

TEST_CASE("signatures") {
  CHECK(validate(make_genus2({2, 2, 2})) == Signature{2, 0, 0});
  CHECK(validate(make_qpiece(3.0, 0.0)) == Signature{1, 1, 1});
  CHECK(validate(make_qpiece(3.0, 2.0)) == Signature{1, 1, 0});
  CHECK(validate(make_genus3({2, 2, 2, 2, 2, 2})) == Signature{3, 0, 0});
  CHECK(validate(make_cusped_torus({2, 2})) == Signature{1, 2, 2});
  CHECK(validate(make_fpiece(2.0, 3.0, 3.0)) == Signature{1, 2, 0});
  CHECK(validate(parse_spec(kTorusFourCusps)) == Signature{1, 4, 4});
}

TEST_CASE("invalid specs") {
  SurfaceSpec s = make_genus2({2, 2, 2});
  s.lengths[1] = 2.5;
  CHECK(code_of([&] { validate(s); }) == Errc::length_mismatch);
  SurfaceSpec c = make_cusped_torus({2, 2});
  c.gluings[0].b = 3;  // p1.0 is a cusp
  CHECK_THROWS_AS(validate(c), Error);
  CHECK(code_of([] { parse_spec("{\"pants\": 3}"); }) == Errc::parse);
}

TEST_CASE("separation agrees with the mod-2 oracle") {
  std::vector<SurfaceSpec> specs = {make_genus2({2, 2, 2}), make_genus2_chain(2, 2, 3), make_genus3({2, 2, 2, 2, 2, 2}),
                                    make_cusped_torus({2, 2}), parse_spec(kTorusFourCusps), make_qpiece(3, 0)};
  for (int seed = 1; seed <= 5; ++seed) specs.push_back(random_spec("genus3", seed));
  for (const SurfaceSpec& s : specs)
    for (int c = 0; c < s.curve_count(); ++c) CHECK(is_nonseparating(s, {c}) == nonseparating_mod2(s, c));
  const SurfaceSpec chain = make_genus2_chain(2, 2, 3);
  CHECK_FALSE(is_nonseparating(chain, {2}));
  for (int c = 0; c < 3; ++c) CHECK(is_nonseparating(make_genus2({2, 2, 2}), {c}));
}

TEST_CASE("cut and reglue") {
  const SurfaceSpec g2 = make_genus2({2, 2.5, 3}, {0.1, 0.2, 0.3});
  const CutSurface cut = cut_along(g2, {1});
  CHECK(validate(cut.spec) == Signature{1, 2, 0});
  CHECK(isomorphic(glue_self(cut.spec, cut.first, cut.second, cut.twist), g2));
  CHECK(validate(cut_along(make_cusped_torus({2, 2}), {0}).spec) == Signature{0, 4, 2});
  CHECK(code_of([] { cut_along(make_genus2_chain(2, 2, 3), {2}); }) == Errc::separating_curve);
}

TEST_CASE("gluing two Q-pieces") {
  const SurfaceSpec q = make_qpiece(2.0, 3.0);
  const SocketId b = q.boundary_sockets().front();
  CHECK(validate(glue_pair(q, b, q, b, TwistParam(0.0))) == Signature{2, 0, 0});
  const SurfaceSpec qc = make_qpiece(2.0, 0.0);
  CHECK_THROWS_AS(glue_pair(qc, qc.boundary_sockets().front(), q, b, TwistParam(0.0)), Error);
}

TEST_CASE("cyclic cover genus and boundary formulas") {
  for (int g = 1; g <= 4; ++g)
    for (int n = 0; n <= 4; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      // genus g with n cusps: a chain of g handles, cusps on the first pants
      SurfaceSpec s;
      if (g == 1 && n == 1) s = make_qpiece(2.0, 0.0);
      else if (g == 1 && n == 2) s = make_cusped_torus({2, 2});
      else if (n == 0 && g == 2) s = make_genus2({2, 2, 2});
      else if (n == 0 && g == 3) s = make_genus3({2, 2, 2, 2, 2, 2});
      else continue;
      for (int k = 2; k <= 8; ++k) {
        const Signature sig = validate(cyclic_cover(s, {0}, k).spec);
        CHECK(sig.genus == k * (g - 1) + 1);
        CHECK(sig.boundaries == k * n);
        CHECK(sig.cusps == k * n);
      }
    }
  CHECK(validate(cyclic_cover(make_genus2({2, 2, 2}), {0}, 7).spec).genus == 8);
  CHECK(validate(cyclic_cover(make_cusped_torus({2, 2}), {0}, 3).spec) == Signature{1, 6, 6});
  CHECK_THROWS_AS(cyclic_cover(make_genus2({2, 2, 2}), {0}, 1), Error);
  const CoverResult twisted =
      cyclic_cover(make_genus2({2, 2, 2}), {0}, 2, {TwistParam(0.1), TwistParam(0.2)});
  CHECK_FALSE(twisted.normal);
  CHECK(cyclic_cover(make_genus2({2, 2, 2}), {0}, 2).normal);
}

TEST_CASE("F-piece insertion") {
  const SurfaceSpec g2 = make_genus2({2, 2, 2});
  const SurfaceSpec f = make_fpiece(2.0, 3.0, 3.0);
  CHECK(validate(insert_fpiece(g2, {0}, f, {TwistParam(0), TwistParam(0)})) == Signature{3, 0, 0});
  CHECK(code_of([&] { insert_fpiece(g2, {0}, make_fpiece(2.5, 3, 3), {TwistParam(0), TwistParam(0)}); }) ==
        Errc::length_mismatch);
}

TEST_CASE("doubling and capping a cusped surface") {
  const SurfaceSpec s = parse_spec(kTorusFourCusps);
  const ExcisedSurface ex = excise_cusp_pair(s, find_curve(s, "x"));
  CHECK(validate(ex.remainder) == Signature{1, 3, 2});
  const double b = ex.remainder.lengths[ex.boundary];
  CHECK(validate(double_along(ex.remainder, ex.boundary, TwistParam(0))) == Signature{2, 4, 4});
  CHECK(validate(double_with_fpiece(ex.remainder, ex.boundary, make_fpiece(b, 3, 3),
                                    {TwistParam(0), TwistParam(0)})) == Signature{3, 4, 4});
  CHECK(validate(attach_qpiece(ex.remainder, ex.boundary, make_qpiece(2, b), TwistParam(0))) ==
        Signature{2, 2, 2});
  CHECK_THROWS_AS(excise_cusp_pair(s, find_curve(s, "a")), Error);
}

TEST_CASE("spec files round-trip bit-exactly") {
  for (int seed = 1; seed <= 5; ++seed) {
    const std::string text = write_spec(random_spec("genus3", seed));
    CHECK(write_spec(parse_spec(text)) == text);
  }
  const std::string cover = write_spec(cyclic_cover(random_spec("cusped12", 3), {1}, 3).spec);
  CHECK(write_spec(parse_spec(cover)) == cover);
}

TEST_CASE("isomorphism ignores names and order") {
  SurfaceSpec a = make_genus2({2, 2.5, 3}, {0.1, 0.0, -0.2});
  SurfaceSpec b = a;
  std::swap(b.pants[0], b.pants[1]);
  for (auto& g : b.gluings) {
    g.a = (g.a + 3) % 6;
    g.b = (g.b + 3) % 6;
  }
  std::swap(b.lengths[0], b.lengths[3]);
  std::swap(b.lengths[1], b.lengths[4]);
  std::swap(b.lengths[2], b.lengths[5]);
  CHECK(isomorphic(a, b));
  SurfaceSpec c = a;
  c.gluings[1].twist = TwistParam(0.3);
  CHECK_FALSE(isomorphic(a, c));
}

TEST_CASE("random specs are reproducible and in range") {
  CHECK(write_spec(random_spec("genus2", 42)) == write_spec(random_spec("genus2", 42)));
  CHECK(write_spec(random_spec("genus2", 42)) != write_spec(random_spec("genus2", 43)));
  const SurfaceSpec s = random_spec("genus3", 7);
  for (const Gluing& g : s.gluings) {
    CHECK(s.lengths[g.a] >= kRandomLengthMin);
    CHECK(s.lengths[g.a] <= kRandomLengthMax);
    CHECK(g.twist.value() > -0.5);
    CHECK(g.twist.value() <= 0.5);
  }
  CHECK_THROWS_AS(random_spec("genus9", 1), Error);
}
