#pragma once

// Reduction by a sub-torus: critical and Bohr-Sommerfeld values, reduced
// weighted polytopes and the decomposition of sections into leaves.

#include "stackyfan/fan.hpp"
#include "stackyfan/polytope.hpp"

#include <optional>
#include <string>

namespace stackyfan {

// Rows generate the integral lattice of the sub-torus Lie algebra; stored as
// the HNF basis of the saturation.
class Subtorus {
 public:
  Subtorus() = default;
  // Throws InvalidInput when the rows are linearly dependent.
  Subtorus(std::size_t ambient_rank, const std::vector<IntVec>& rows);

  std::size_t ambient_rank() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return basis_.rows(); }
  const IntMatrix& basis() const noexcept { return basis_; }

 private:
  std::size_t n_ = 0;
  IntMatrix basis_;
};

// pi(P) for pi given by the subtorus rows.
HPolytope image_polytope(const HPolytope& P, const Subtorus& T);

// Images pi(F) of the faces F on which pi is not submersive, each as the
// vertex list of pi(F) (deduplicated, sorted).
std::vector<std::vector<RatVec>> critical_images(const HPolytope& P, const Subtorus& T);

// One-dimensional sub-torus: the critical values in ascending order.
std::vector<Rat> critical_values(const HPolytope& P, const Subtorus& T);

struct BSValue {
  IntVec alpha;
  bool regular = true;
};

// Lattice points of pi(P) in pi(Z^n) = Z^d, lexicographic.
std::vector<BSValue> bs_values(const HPolytope& P, const Subtorus& T, const EnumerationOptions& opts = {});

struct ReducedOrbifold {
  RatVec alpha;
  Slice slice;          // raw slice of P at alpha
  HPolytope polytope;   // irredundant facets with transferred weights, kernel coordinates
  WeightedFan fan;      // dual fan of `polytope` (empty when dimension 0)
};

// The slice is taken through an integral point of the level set when one
// exists. Throws EmptySlice when the slice is empty and NotOrbifold when it is not
// a full-dimensional simple polytope.
ReducedOrbifold reduce_at(const HPolytope& P, const Subtorus& T, const RatVec& alpha);

// #{x in N(l) ∩ Z^n : pi(x) = alpha}, cross-checked against the slice.
std::uint64_t leaf_h0(const WeightedFan& fan, const IntVec& l, const Subtorus& T, const IntVec& alpha,
                      const EnumerationOptions& opts = {});

struct Leaf {
  IntVec alpha;
  bool regular = true;
  std::uint64_t h0 = 0;
  std::optional<Slice> slice;              // through an integral point of the level set, when one exists
  std::optional<ReducedOrbifold> reduced;  // absent when the reduction failed
  std::string reduction_error;             // reason when absent
};

struct ReductionReport {
  HPolytope image;  // P_1
  std::vector<std::vector<RatVec>> critical;
  std::vector<Leaf> leaves;  // one per BS value, lexicographic
  std::uint64_t total_h0 = 0;
  std::uint64_t leaf_sum = 0;
  bool total_check = false;
};

ReductionReport qr_rq_report(const WeightedFan& fan, const IntVec& l, const Subtorus& T,
                             const EnumerationOptions& opts = {});

}  // namespace stackyfan
