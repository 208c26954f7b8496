#include "systole/builders.hpp"

#include "systole/error.hpp"

namespace systole {

namespace {

std::array<std::string, 3> sockets_of(int p) {
  const std::string base = "p" + std::to_string(p) + ".";
  return {base + "0", base + "1", base + "2"};
}

SurfaceSpec with_pants(int count) {
  SurfaceSpec spec;
  for (int p = 0; p < count; ++p) spec.pants.push_back(sockets_of(p));
  spec.lengths.assign(3 * count, 0.0);
  return spec;
}

void glue(SurfaceSpec& spec, SocketId x, SocketId y, double length, double twist) {
  spec.lengths.at(x) = length;
  spec.lengths.at(y) = length;
  spec.gluings.push_back({x, y, TwistParam(twist)});
}

}  // namespace

SurfaceSpec make_genus2(std::array<double, 3> lengths, std::array<double, 3> twists) {
  SurfaceSpec spec = with_pants(2);
  for (int k = 0; k < 3; ++k) glue(spec, k, 3 + k, lengths[k], twists[k]);
  return spec;
}

SurfaceSpec make_genus2_chain(double left, double right, double separating,
                              std::array<double, 3> twists) {
  SurfaceSpec spec = with_pants(2);
  glue(spec, 0, 1, left, twists[0]);
  glue(spec, 3, 4, right, twists[1]);
  glue(spec, 2, 5, separating, twists[2]);
  return spec;
}

SurfaceSpec make_genus3(std::array<double, 6> l, std::array<double, 6> t) {
  // P0(a,b,c) P1(a,b,d) P2(c,e,f) P3(d,e,f)
  SurfaceSpec spec = with_pants(4);
  glue(spec, 0, 3, l[0], t[0]);
  glue(spec, 1, 4, l[1], t[1]);
  glue(spec, 2, 6, l[2], t[2]);
  glue(spec, 5, 9, l[3], t[3]);
  glue(spec, 7, 10, l[4], t[4]);
  glue(spec, 8, 11, l[5], t[5]);
  return spec;
}

SurfaceSpec make_cusped_torus(std::array<double, 2> lengths, std::array<double, 2> twists) {
  // P0(cusp, x, y) P1(cusp, x, y)
  SurfaceSpec spec = with_pants(2);
  glue(spec, 1, 4, lengths[0], twists[0]);
  glue(spec, 2, 5, lengths[1], twists[1]);
  return spec;
}

SurfaceSpec make_qpiece(double interior, double boundary, double twist) {
  SurfaceSpec spec = with_pants(1);
  glue(spec, 0, 1, interior, twist);
  spec.lengths[2] = boundary;
  return spec;
}

SurfaceSpec make_fpiece(double boundary, double x, double y, std::array<double, 2> twists) {
  SurfaceSpec spec = with_pants(2);
  spec.lengths[0] = boundary;
  spec.lengths[3] = boundary;
  glue(spec, 1, 4, x, twists[0]);
  glue(spec, 2, 5, y, twists[1]);
  return spec;
}

double SpecRng::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double SpecRng::twist() {
  // u in [0,1) maps to (-1/2, 1/2] via 1/2 - u.
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return 0.5 - u;
}

SurfaceSpec random_spec(const std::string& family, std::uint64_t seed) {
  SpecRng rng(seed);
  auto len = [&] { return rng.uniform(kRandomLengthMin, kRandomLengthMax); };
  if (family == "genus2") {
    std::array<double, 3> l{};
    std::array<double, 3> t{};
    for (auto& x : l) x = len();
    for (auto& x : t) x = rng.twist();
    return make_genus2(l, t);
  }
  if (family == "genus3") {
    std::array<double, 6> l{};
    std::array<double, 6> t{};
    for (auto& x : l) x = len();
    for (auto& x : t) x = rng.twist();
    return make_genus3(l, t);
  }
  if (family == "cusped12") {
    std::array<double, 2> l{};
    std::array<double, 2> t{};
    for (auto& x : l) x = len();
    for (auto& x : t) x = rng.twist();
    return make_cusped_torus(l, t);
  }
  throw Error(Errc::domain, "unknown random family '" + family + "'");
}

std::vector<std::string> builtin_spec_names() {
  return {"genus2", "genus2-systole", "genus2-chain", "genus3", "cusped12", "qpiece-cusp"};
}

bool is_builtin_spec(const std::string& name) {
  for (const auto& n : builtin_spec_names()) {
    if (n == name) return true;
  }
  return false;
}

SurfaceSpec builtin_spec(const std::string& name) {
  if (name == "genus2") return make_genus2({2.0, 2.0, 2.0});
  if (name == "genus2-systole") return make_genus2({1.0, 3.0, 3.0});
  if (name == "genus2-chain") return make_genus2_chain(2.5, 2.5, 3.0);
  if (name == "genus3") return make_genus3({2.5, 2.5, 2.5, 2.5, 2.5, 2.5});
  if (name == "cusped12") return make_cusped_torus({2.5, 2.5});
  if (name == "qpiece-cusp") return make_qpiece(3.0, 0.0);
  throw Error(Errc::invalid_spec, "unknown builtin spec '" + name + "'");
}

}  // namespace systole
