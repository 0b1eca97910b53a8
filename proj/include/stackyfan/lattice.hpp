#pragma once

// Sublattices of Q^n, finite abelian quotients and affine lattice feasibility.

#include "stackyfan/numeric.hpp"

#include <optional>
#include <vector>

namespace stackyfan {

// A discrete subgroup (1/denominator) * rowspan_Z(basis) of Q^n. The basis is
// kept in Hermite normal form and the denominator is the least positive
// integer d with d * L contained in Z^n, so equal lattices compare equal.
class Lattice {
 public:
  Lattice() = default;
  static Lattice standard(std::size_t n);
  static Lattice zero(std::size_t n);

  std::size_t ambient_rank() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return basis_.rows(); }
  bool full_rank() const noexcept { return rank() == ambient_; }
  const IntMatrix& basis() const noexcept { return basis_; }
  const Int& denominator() const noexcept { return denominator_; }

  std::vector<RatVec> generators() const;
  bool contains(const RatVec& x) const;
  bool contains(const IntVec& x) const { return contains(to_rat(x)); }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ambient_ == b.ambient_ && a.denominator_ == b.denominator_ && a.basis_ == b.basis_;
  }

 private:
  friend Lattice lattice_from_rational_generators(const std::vector<RatVec>&, std::size_t);
  std::size_t ambient_ = 0;
  IntMatrix basis_;
  Int denominator_ = 1;
};

Lattice lattice_from_generators(const std::vector<IntVec>& vectors, std::size_t n);
Lattice lattice_from_rational_generators(const std::vector<RatVec>& vectors, std::size_t n);

Lattice intersect(const Lattice& a, const Lattice& b);

// {u : <u, v> in Z for all v in L}; requires L of full rank.
Lattice dual_lattice(const Lattice& L);

// (span_Q L) ∩ Z^n.
Lattice saturation(const Lattice& L);

bool is_sublattice(const Lattice& sub, const Lattice& sup);

// Canonical representative of x + L: subtracts basis rows so that every pivot
// coordinate lands in [0, pivot).
RatVec reduce_modulo(const RatVec& x, const Lattice& L);

struct FiniteAbelianGroup {
  IntVec invariant_factors;  // d1 | d2 | ... , each >= 2
  Int order() const;
  bool trivial() const noexcept { return invariant_factors.empty(); }
  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;
};

struct Quotient {
  FiniteAbelianGroup group;
  std::vector<RatVec> coset_reps;  // reduced modulo sub, zero first, then lexicographic
};

// sup / sub. Throws NotSublattice when sub is not contained in sup and
// InvalidInput when the ranks differ (infinite quotient).
Quotient quotient(const Lattice& sup, const Lattice& sub);

// Group structure only (no representative enumeration).
FiniteAbelianGroup quotient_group(const Lattice& sup, const Lattice& sub);

// A point of (p + span_Q(span)) ∩ L, reduced modulo the direction lattice
// L ∩ span_Q(span), or nullopt when the affine subspace misses L.
std::optional<RatVec> affine_meets_lattice(const RatVec& p, const std::vector<RatVec>& span, const Lattice& L);

// L ∩ span_Q(span).
Lattice lattice_in_subspace(const Lattice& L, const std::vector<RatVec>& span);

}  // namespace stackyfan
