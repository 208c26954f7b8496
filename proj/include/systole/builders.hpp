#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "systole/surface.hpp"

namespace systole {

/// Closed genus 2: two pants glued along all three sockets.
SurfaceSpec make_genus2(std::array<double, 3> lengths, std::array<double, 3> twists = {});
/// Closed genus 2 as two Q-pieces joined along a separating curve (curve c2).
SurfaceSpec make_genus2_chain(double left, double right, double separating,
                              std::array<double, 3> twists = {});
/// Closed genus 3: four pants in a ring, curves (a, b, c, d, e, f).
SurfaceSpec make_genus3(std::array<double, 6> lengths, std::array<double, 6> twists = {});
/// Genus one with two cusps: two pants sharing two curves.
SurfaceSpec make_cusped_torus(std::array<double, 2> lengths, std::array<double, 2> twists = {});
/// Q-piece: one pants with two sockets glued; boundary 0 makes it a cusp.
SurfaceSpec make_qpiece(double interior, double boundary, double twist = 0.0);
/// F-piece with both boundaries of length `boundary` and interior curves x, y.
SurfaceSpec make_fpiece(double boundary, double x, double y, std::array<double, 2> twists = {});

/// Deterministic generator; uniform doubles are built from raw bits so the
/// sequence does not depend on the standard library's distributions.
class SpecRng {
 public:
  explicit SpecRng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi);
  /// Uniform in the twist window (-1/2, 1/2].
  double twist();

 private:
  std::mt19937_64 engine_;
};

inline constexpr double kRandomLengthMin = 1.5;
inline constexpr double kRandomLengthMax = 4.0;

/// Random member of a family ("genus2", "genus3", "cusped12") with lengths in
/// [1.5, 4] and uniform twists.
SurfaceSpec random_spec(const std::string& family, std::uint64_t seed);

/// Named specs used by the CLI and the tests.
bool is_builtin_spec(const std::string& name);
SurfaceSpec builtin_spec(const std::string& name);
std::vector<std::string> builtin_spec_names();

}  // namespace systole
