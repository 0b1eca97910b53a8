#pragma once

// Orbi-line bundles on a weighted fan: ray data l_rho and vertex characters
// m_sigma, Newton polytopes and sections, rational Chern classes, torsion.

#include "stackyfan/fan.hpp"
#include "stackyfan/lattice.hpp"
#include "stackyfan/polytope.hpp"

#include <optional>
#include <vector>

namespace stackyfan {

// One m_sigma per maximal cone, in the fan's cone order.
using VertexCharacters = std::vector<RatVec>;

// m_sigma solving <m_sigma, w_rho nu_rho> = l_rho for rho in sigma.
VertexCharacters to_vertex_characters(const WeightedFan& fan, const IntVec& l);

// Inverse of to_vertex_characters. Throws NotIntegral when some pairing
// <m_sigma, w_rho nu_rho> is not an integer and Incompatible when two cones
// disagree on a shared ray.
IntVec to_ray_data(const WeightedFan& fan, const VertexCharacters& m);

// {x : <x, w_rho nu_rho> >= l_rho}, facet weights w_rho.
HPolytope newton_polytope(const WeightedFan& fan, const IntVec& l);

struct Sections {
  std::uint64_t count = 0;
  std::vector<IntVec> characters;  // lexicographic
};

Sections h0(const WeightedFan& fan, const IntVec& l, const EnumerationOptions& opts = {});

// Class of h = (l_rho / w_rho) modulo V = {(<u, nu_rho>)_rho : u in Q^n}.
// The stored representative vanishes on the pivot coordinates of V.
struct RationalClass {
  RatVec representative;
  friend bool operator==(const RationalClass&, const RationalClass&) = default;
};

RationalClass rational_class(const WeightedFan& fan, const RatVec& h);
RationalClass chern_class(const WeightedFan& fan, const IntVec& l);

// Integer l with l / w in h + V, or nullopt when the class is not
// orbi-integral.
std::optional<IntVec> is_orbi_integral(const WeightedFan& fan, const RatVec& h);

struct TorsionGroup {
  FiniteAbelianGroup group;
  std::vector<RatVec> representatives;  // in the dual of the fundamental-group lattice, modulo Z^n
};

TorsionGroup torsion_subgroup(const WeightedFan& fan);

// Equivalence classes of linearized bundles modulo the shifts
// l_rho -> l_rho + <u, w_rho nu_rho>, u in Z^n.
struct BundleClass {
  IntVec representative;
  friend bool operator==(const BundleClass&, const BundleClass&) = default;
  friend auto operator<=>(const BundleClass&, const BundleClass&) = default;
};

BundleClass bundle_class(const WeightedFan& fan, const IntVec& l);
bool bundles_equivalent(const WeightedFan& fan, const IntVec& l1, const IntVec& l2);

// l'_rho = l_rho + <u, w_rho nu_rho>
IntVec shift_bundle(const WeightedFan& fan, const IntVec& l, const RatVec& u);

struct ClassMember {
  BundleClass bundle;
  RatVec torsion_shift;
  std::uint64_t h0 = 0;
};

// The bundles with rational class h, one per torsion element. Throws
// NotIntegral when h is not orbi-integral.
std::vector<ClassMember> bundles_with_class(const WeightedFan& fan, const RatVec& h, const EnumerationOptions& opts = {});

// Coarse Cartier data a (one integer per ray, weights ignored) whose class
// equals h, or nullopt when h is not pulled back from a line bundle on the
// coarse toric variety.
std::optional<IntVec> coarse_pullback_witness(const WeightedFan& fan, const RatVec& h);

}  // namespace stackyfan
