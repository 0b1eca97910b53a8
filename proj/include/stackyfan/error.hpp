#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stackyfan {

enum class ErrorCode {
  InvalidInput,     // structurally malformed data (bad indices, wrong lengths)
  NotFullRank,      // dual of a lattice that does not span
  NotSublattice,    // quotient of lattices with sub not contained in sup
  NotSimplicial,    // polytope vertex is not simple / fan cone is degenerate
  Unbounded,
  NotIntegral,      // class has no orbi-line bundle representative
  Incompatible,     // vertex characters violate the gluing condition
  NotPrequantizable,
  NotOrbifold,      // reduced polytope is not a simple full-dimensional polytope
  EmptySlice,
  CapExceeded,
  RankMismatch,
};

std::string_view error_name(ErrorCode code);

// Domain error raised by every library operation; the CLI maps these to exit
// code 2 and reports `code` in its error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stackyfan
