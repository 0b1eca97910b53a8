#pragma once

// Weighted (stacky) simplicial fans.

#include "stackyfan/numeric.hpp"
#include "stackyfan/polytope.hpp"

#include <string>
#include <utility>
#include <vector>

namespace stackyfan {

struct Ray {
  IntVec generator;  // primitive
  Int weight;
};

// Ray-index set, kept sorted.
using ConeRef = std::vector<std::size_t>;

class WeightedFan {
 public:
  WeightedFan() = default;
  // Generators are normalized to their primitive part; the weights are taken
  // as given. Throws InvalidInput on structural errors (rank mismatch, zero
  // or repeated generators, cone indices out of range).
  WeightedFan(std::size_t rank, const std::vector<IntVec>& generators, const std::vector<Int>& weights,
              std::vector<ConeRef> max_cones);

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<Ray>& rays() const noexcept { return rays_; }
  const std::vector<ConeRef>& max_cones() const noexcept { return cones_; }
  std::size_t num_rays() const noexcept { return rays_.size(); }

  // w_rho * nu_rho
  IntVec weighted_generator(std::size_t ray) const;
  // Rows are w_rho nu_rho (weighted = true) or nu_rho for the rays of the cone.
  IntMatrix cone_matrix(const ConeRef& cone, bool weighted) const;

  // Maximal cones containing the given cone.
  std::vector<std::size_t> cones_containing(const ConeRef& cone) const;
  bool is_cone(const ConeRef& cone) const;

  WeightedFan with_weights(const std::vector<Int>& weights) const;

 private:
  std::size_t rank_ = 0;
  std::vector<Ray> rays_;
  std::vector<ConeRef> cones_;
};

struct ValidationReport {
  std::vector<bool> primitive;        // per ray
  std::vector<bool> positive_weight;  // per ray
  std::vector<bool> simplicial;       // per maximal cone
  std::vector<bool> ray_used;         // per ray
  std::vector<std::pair<std::size_t, std::size_t>> incompatible_pairs;
  bool complete = false;
  bool valid() const;
  std::vector<std::string> problems() const;
};

ValidationReport validate(const WeightedFan& fan);

// Throws InvalidInput listing the problems when the fan is not valid.
void require_valid(const WeightedFan& fan);

// True when the geometric intersection of the two simplicial cones equals the
// cone over their common rays.
bool cones_meet_in_common_face(const WeightedFan& fan, const ConeRef& a, const ConeRef& b);

struct CommonFace {
  ConeRef face;
  std::vector<RatVec> perp_basis;  // spans {u : <u, nu_rho> = 0 for rho in face}
};

CommonFace common_face(const WeightedFan& fan, const ConeRef& a, const ConeRef& b);

// Dual fan of a full-dimensional bounded polytope: one ray per facet (inner
// normal, carrying the facet weight, 1 when absent), one maximal cone per
// vertex. Redundant inequalities are dropped, so rays follow the order of
// the irredundant facets. Throws NotSimplicial when a vertex is not simple.
WeightedFan dual_fan(const HPolytope& P);

}  // namespace stackyfan
