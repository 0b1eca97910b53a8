#pragma once

// Static SVG drawings of rank-2 fans and polytopes and of one-dimensional
// reduction reports. Output is a pure function of the input.

#include "stackyfan/fan.hpp"
#include "stackyfan/picard.hpp"
#include "stackyfan/polytope.hpp"
#include "stackyfan/reduction.hpp"

#include <string>

namespace stackyfan {

// Shaded cones, rays with weight labels, lattice dots. Rank 2 only.
std::string render_fan_svg(const WeightedFan& fan);

// Outline of P over the lattice dots, with the optional marks (for example
// the vertex characters m_sigma) drawn as rings. Rank 2 only.
std::string render_polytope_svg(const HPolytope& P, const std::vector<RatVec>& marks = {});

// One panel per Bohr-Sommerfeld value showing the slice in kernel
// coordinates and its lattice points. Needs d = 1 and n - d = 2.
std::string render_reduction_svg(const ReductionReport& report, std::size_t ambient_rank);

}  // namespace stackyfan
