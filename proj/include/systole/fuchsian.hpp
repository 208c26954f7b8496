#pragma once

#include <array>
#include <string>
#include <vector>

#include "systole/mat2.hpp"
#include "systole/surface.hpp"

namespace systole {

/// Word in the generators: letter +k is generator k-1, -k its inverse.
using Word = std::vector<int>;

struct Representation {
  std::vector<Mat2> generators;
  /// Each must evaluate to +-identity.
  std::vector<Word> relators;
  /// Word of every interior curve of the source spec, by gluing index.
  std::vector<Word> curve_words;
  std::vector<double> curve_lengths;
  /// Boundary monodromy of every cusp socket.
  std::vector<Word> cusp_words;
  /// Every point of a fundamental set's thick part lies within this distance
  /// of i. Closed geodesics never leave the thick part.
  double core_radius = 0.0;
  /// Sample of a fundamental set's thick part; every point of the set lies
  /// within `core_mesh` of a sample.
  std::vector<Vec3> core_samples;
  double core_mesh = 0.0;

  /// Trace expected for curve `c`: 2 cosh(l/2).
  double curve_trace(int c) const;
};

Mat2 evaluate(const Representation& rep, const Word& word);
Word inverse_word(const Word& word);
/// max over relators of min(|W - I|, |W + I|).
double relator_residual(const Representation& rep);

/// Replaces every generator X by g X g^-1; the core radius grows by d(i, g i).
Representation conjugate(const Representation& rep, const Mat2& g);

/// Matrix generators for the surface group of a closed or cusped spec.
Representation fn_to_generators(const SurfaceSpec& spec);

/// Greedy Nielsen moves x -> x y^+-1, y^+-1 x while they bring x(i) closer to
/// i; all stored words are rewritten in the new generators.
Representation nielsen_reduce(const Representation& rep);

namespace detail {

// The construction runs in quad precision; generators are rounded once.

/// Unit normals of the three seam lines of a Y-piece. Line k is opposite
/// boundary k; <T_j, T_k> = -cosh(l_i / 2) with i the third index.
std::array<Vec3Q, 3> pants_lines(const std::array<double, 3>& lengths);

/// Boundary holonomy g_i = T_{i+2} T_{i+1}; g_2 g_1 g_0 = I.
Mat2Q boundary_element(const std::array<Vec3Q, 3>& lines, int slot);

/// SL(2,R) element taking the imaginary axis (upward) to the axis of g and i
/// to the foot of `line` on that axis.
Mat2Q boundary_frame(const Mat2Q& g, const Vec3Q& line);

/// A point inside the region bounded by the three lines.
Vec3 pants_interior_point(const std::array<Vec3Q, 3>& lines);

/// Hexagon vertices (cusps truncated at the length-2 horocycle), in cyclic
/// order.
std::vector<Vec3> hexagon_vertices(const std::array<Vec3Q, 3>& lines,
                                   const std::array<double, 3>& lengths);

/// Grid over the convex polygon with the given vertices; `mesh` receives the
/// largest grid edge.
std::vector<Vec3> sample_polygon(const std::vector<Vec3>& vertices, double spacing, double& mesh);

}  // namespace detail

}  // namespace systole
