#pragma once

#include <stdexcept>
#include <string>

namespace cantorsum {

enum class Errc {
  config,
  cap_exceeded,
  identical_sequences,
  out_of_domain,
  separation_violated,
  no_root,
  degenerate_fit,
  resolution_too_coarse,
  resolution_mismatch,
  bin_mismatch,
  grid_too_coarse,
  infeasible_triple,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace cantorsum
