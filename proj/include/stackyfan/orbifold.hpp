#pragma once

// Cover lattices, chart groups, orbifold fundamental group and universal
// cover of a weighted fan.

#include "stackyfan/fan.hpp"
#include "stackyfan/lattice.hpp"

namespace stackyfan {

struct CoverData {
  ConeRef cone;
  Lattice lattice;                  // generated by w_rho nu_rho for maximal cones, intersections otherwise
  FiniteAbelianGroup chart_group;   // Z^n / lattice
};

// Throws InvalidInput when `cone` is not a cone of the fan.
CoverData cover_lattice(const WeightedFan& fan, const ConeRef& cone);

// Cover data of every cone of the fan (all faces of maximal cones), ordered
// by size and then lexicographically.
std::vector<CoverData> all_cover_lattices(const WeightedFan& fan);

// True when cover_lattice(cone) / <w_rho nu_rho : rho in cone> is torsion-free.
bool chart_basis_check(const WeightedFan& fan, const ConeRef& cone);

struct FundamentalGroup {
  FiniteAbelianGroup group;
  Lattice lattice;  // generated by all w_rho nu_rho
};

FundamentalGroup orbifold_pi1(const WeightedFan& fan);

struct UniversalCover {
  Lattice base_lattice;
  WeightedFan cover_fan;  // coordinates with respect to the rows of base_lattice.basis()
  FiniteAbelianGroup deck_group;
};

UniversalCover universal_cover(const WeightedFan& fan);

// Order of the generic stabilizer along the divisor of the ray.
Int ray_stabilizer_order(const WeightedFan& fan, std::size_t ray);

}  // namespace stackyfan
