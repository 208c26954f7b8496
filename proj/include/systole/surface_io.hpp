#pragma once

#include <string>

#include "systole/surface.hpp"

namespace systole {

// Surface-spec files are JSON objects with keys, in this order:
//   "pants":   [[name, name, name], ...]
//   "gluings": [{"a": name, "b": name, "twist": t}, ...]
//   "lengths": {name: length, ...}      0 marks a cusp
//   "labels":  [curve name, ...]        optional, one per gluing
// write_spec(parse_spec(write_spec(s))) reproduces the bytes exactly.

SurfaceSpec parse_spec(const std::string& text);
std::string write_spec(const SurfaceSpec& spec);

SurfaceSpec load_spec(const std::string& path);
void save_spec(const SurfaceSpec& spec, const std::string& path);

}  // namespace systole
