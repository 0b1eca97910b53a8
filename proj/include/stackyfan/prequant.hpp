#pragma once

// Prequantization of weighted (Lerman-Tolman) polytopes.

#include "stackyfan/fan.hpp"
#include "stackyfan/picard.hpp"
#include "stackyfan/polytope.hpp"

namespace stackyfan {

struct PrequantResult {
  bool prequantizable = false;
  HPolytope polytope;    // irredundant facets of the input, in ray order of `fan`
  WeightedFan fan;       // dual fan, facet weights on the rays
  RatVec translation;    // t with w_F (c_F + <t, a_F>) integral for all F
  IntVec l;              // l_F = w_F (c_F + <t, a_F>)
  VertexCharacters vertex_characters;  // vertices of P + t, one per maximal cone
  std::vector<ClassMember> bundles;    // the torsor of prequantum bundles
};

// Missing facet weights count as 1. Throws NotSimplicial for a non-simple
// vertex, Unbounded or InvalidInput for unbounded or lower-dimensional input.
PrequantResult prequantize(const HPolytope& P, const EnumerationOptions& opts = {});

// Vertices of P + t, one per maximal cone of the dual fan. Throws
// NotIntegral when some vertex is not a character of its cover torus.
VertexCharacters vertex_characters_of_polytope(const HPolytope& P, const RatVec& t);

}  // namespace stackyfan
