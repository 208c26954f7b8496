#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "systole/hyptrig.hpp"

namespace systole {

/// (genus, boundary count, cusp count); cusps are the zero-length boundaries.
struct Signature {
  int genus = 0;
  int boundaries = 0;
  int cusps = 0;

  int euler_characteristic() const noexcept { return 2 - 2 * genus - boundaries; }
  /// Number of Y-pieces in any pants decomposition.
  int pants_count() const noexcept { return 2 * genus - 2 + boundaries; }
  bool is_hyperbolic() const noexcept { return 2 * genus - 2 + boundaries > 0; }
  bool is_closed() const noexcept { return boundaries == 0; }
  /// Every boundary is a cusp.
  bool is_complete() const noexcept { return boundaries == cusps; }

  friend bool operator==(const Signature&, const Signature&) = default;
};

std::string to_string(const Signature& s);

/// Socket = one boundary slot of one Y-piece, indexed 3 * pants + slot.
using SocketId = int;

inline constexpr int pants_of(SocketId s) noexcept { return s / 3; }
inline constexpr int slot_of(SocketId s) noexcept { return s % 3; }

struct Gluing {
  SocketId a = 0;
  SocketId b = 0;
  TwistParam twist;
};

/// Pants decomposition with Fenchel-Nielsen data. Socket `s` has name
/// `pants[s / 3][s % 3]` and length `lengths[s]`; length 0 marks a cusp.
/// Each gluing is an interior curve, named by `labels` when present.
struct SurfaceSpec {
  std::vector<std::array<std::string, 3>> pants;
  std::vector<Gluing> gluings;
  std::vector<double> lengths;
  std::vector<std::string> labels;

  int socket_count() const noexcept { return static_cast<int>(lengths.size()); }
  int curve_count() const noexcept { return static_cast<int>(gluings.size()); }
  const std::string& socket_name(SocketId s) const { return pants.at(pants_of(s)).at(slot_of(s)); }
  SocketId socket_by_name(const std::string& name) const;
  /// Gluing index of a socket, or nullopt if it is a boundary.
  std::optional<int> gluing_of(SocketId s) const;
  std::vector<SocketId> boundary_sockets() const;
  std::string curve_name(int curve) const;
};

/// An interior curve of a spec (index into `gluings`).
struct CurveRef {
  int index = 0;
};

CurveRef find_curve(const SurfaceSpec& spec, const std::string& name);
double curve_length(const SurfaceSpec& spec, CurveRef curve);
/// Smallest interior curve length; +inf if the spec has no interior curves.
double min_pants_curve_length(const SurfaceSpec& spec);

/// Checks every structural invariant and returns the derived signature.
Signature validate(const SurfaceSpec& spec);

bool is_nonseparating(const SurfaceSpec& spec, CurveRef curve);

struct CutSurface {
  SurfaceSpec spec;
  SocketId first = 0;   // former gluing.a
  SocketId second = 0;  // former gluing.b
  TwistParam twist;     // twist of the removed gluing
};

/// Removes a non-separating gluing; the two sockets become boundaries.
CutSurface cut_along(const SurfaceSpec& spec, CurveRef curve);

/// Disjoint union of a and b glued along one socket of each. Sockets of `b`
/// are renumbered by 3 * a.pants.size().
SurfaceSpec glue_pair(const SurfaceSpec& a, SocketId socket_a, const SurfaceSpec& b,
                      SocketId socket_b, TwistParam twist);
/// Glues two boundary sockets of the same spec (genus goes up by one).
SurfaceSpec glue_self(const SurfaceSpec& spec, SocketId first, SocketId second, TwistParam twist);

struct CoverResult {
  SurfaceSpec spec;
  bool normal = false;  // all twists equal the base twist
};

/// k copies of the spec cut along `curve`, chained so that copy i's first
/// cut socket meets copy i+1's second, and copy k's first meets copy 1's.
CoverResult cyclic_cover(const SurfaceSpec& spec, CurveRef curve, int k,
                         const std::vector<TwistParam>& twists);
CoverResult cyclic_cover(const SurfaceSpec& spec, CurveRef curve, int k);

/// Cuts along `curve` and bridges the gap with an F-piece (signature (1,2)).
SurfaceSpec insert_fpiece(const SurfaceSpec& spec, CurveRef curve, const SurfaceSpec& fpiece,
                          std::array<TwistParam, 2> twists);

struct ExcisedSurface {
  SurfaceSpec remainder;
  SocketId boundary = 0;  // the exposed socket of the separating curve
};

/// Removes the Y-piece with two cusps bounded by the separating `curve`.
ExcisedSurface excise_cusp_pair(const SurfaceSpec& spec, CurveRef curve);

/// Two copies of R glued along their single geodesic boundary.
SurfaceSpec double_along(const SurfaceSpec& remainder, SocketId boundary, TwistParam twist);
/// R, an F-piece and a second copy of R in a chain.
SurfaceSpec double_with_fpiece(const SurfaceSpec& remainder, SocketId boundary,
                               const SurfaceSpec& fpiece, std::array<TwistParam, 2> twists);
/// R capped off by a Q-piece (signature (1,1)).
SurfaceSpec attach_qpiece(const SurfaceSpec& remainder, SocketId boundary,
                          const SurfaceSpec& qpiece, TwistParam twist);

/// Encoding invariant under renaming sockets, reordering pants and gluings,
/// cyclically rotating the sockets of a pants, and swapping gluing ends.
std::string canonical_form(const SurfaceSpec& spec);
bool isomorphic(const SurfaceSpec& a, const SurfaceSpec& b);

}  // namespace systole
