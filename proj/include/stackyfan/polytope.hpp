#pragma once

// Rational convex polytopes in half-space form: vertices, lattice points,
// projections (Fourier-Motzkin) and affine slices.

#include "stackyfan/lattice.hpp"
#include "stackyfan/numeric.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace stackyfan {

// <x, normal> >= offset. The normal is a primitive integer vector; the zero
// normal only appears in the canonical infeasible row 0 >= 1.
struct Facet {
  IntVec normal;
  Rat offset;
  std::optional<Int> weight;
  friend bool operator==(const Facet&, const Facet&) = default;
};

// Scales (normal, offset) by a positive factor so the normal becomes a
// primitive integer vector. Rows 0 >= c with c <= 0 yield nullopt (vacuous).
std::optional<Facet> make_facet(const RatVec& normal, const Rat& offset, std::optional<Int> weight = std::nullopt);

class HPolytope {
 public:
  HPolytope() = default;
  explicit HPolytope(std::size_t rank) : rank_(rank) {}
  HPolytope(std::size_t rank, std::vector<Facet> facets);

  static HPolytope empty(std::size_t rank);

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }

  // Appends a facet unless an identical (normal, offset) row is present.
  void add(const Facet& f);

  bool contains(const RatVec& x) const;
  bool contains(const IntVec& x) const;
  bool weighted() const;

 private:
  std::size_t rank_ = 0;
  std::vector<Facet> facets_;
};

// Exact vertex list, lexicographically sorted. Throws Unbounded when the
// polyhedron is nonempty and unbounded; an empty polyhedron has no vertices.
std::vector<RatVec> vertices(const HPolytope& P);

// Indices of the facets tight at x.
std::vector<std::size_t> tight_facets(const HPolytope& P, const RatVec& x);

// Dimension of the affine hull of a point set (-1 for the empty set).
int affine_dimension(const std::vector<RatVec>& points);

int dimension(const HPolytope& P);

// Indices of the inequalities that cut out a facet (a face of dimension
// dim P - 1) of a nonempty polytope; the remaining rows are redundant or
// hold on all of P.
std::vector<std::size_t> supporting_facets(const HPolytope& P);

struct EnumerationOptions {
  std::uint64_t cap = 10'000'000;  // maximum number of candidate points
};

// Points of the full-rank lattice L inside P, sorted lexicographically.
std::vector<RatVec> lattice_points(const HPolytope& P, const Lattice& L, const EnumerationOptions& opts = {});
std::vector<IntVec> lattice_points(const HPolytope& P, const EnumerationOptions& opts = {});
std::uint64_t count_lattice_points(const HPolytope& P, const EnumerationOptions& opts = {});

// H-representation of pi(P) for an integer d x n matrix of rank d, obtained
// by Fourier-Motzkin elimination with redundant rows removed.
HPolytope project(const HPolytope& P, const IntMatrix& pi);

struct Slice {
  HPolytope polytope;           // in coordinates y with x = origin + y * kernel_basis
  IntMatrix kernel_basis;       // (n - d) x n, basis of ker(pi) ∩ Z^n
  RatVec origin;
  // For every facet of `polytope`, the source facets of P together with the
  // content k of their restricted normal (restricted = k * slice normal).
  std::vector<std::vector<std::pair<std::size_t, Int>>> sources;
};

// P ∩ {pi x = alpha} in kernel coordinates. Requires pi of full row rank
// and pi * origin = alpha.
Slice slice(const HPolytope& P, const IntMatrix& pi, const RatVec& alpha, const RatVec& origin);

// Integer basis (rows) of ker(pi) ∩ Z^n.
IntMatrix kernel_lattice_basis(const IntMatrix& pi);

}  // namespace stackyfan
