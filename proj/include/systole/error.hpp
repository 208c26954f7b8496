#pragma once

#include <stdexcept>
#include <string>

namespace systole {

enum class Errc {
  domain,            // argument outside the formula's domain
  non_hyperbolic,    // trace with |tr| <= 2
  no_such_polygon,   // polygon relation has no solution
  invalid_spec,      // malformed surface description
  disconnected,      // pants graph is not connected
  length_mismatch,   // glued sockets with different lengths
  cusp_glued,        // a zero-length socket appears in a gluing
  non_hyperbolic_signature,
  separating_curve,
  invalid_curve,
  signature_mismatch,
  unsupported,       // valid input this version does not handle
  io,
  parse,
  precondition,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace systole
