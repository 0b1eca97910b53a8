#pragma once

// Integer normal forms and exact rational elimination.

#include "stackyfan/numeric.hpp"

#include <optional>
#include <vector>

namespace stackyfan {

struct HermiteResult {
  IntMatrix H;  // H = U * M, row echelon, positive pivots, entries above a pivot in [0, pivot)
  IntMatrix U;  // unimodular, rows(M) x rows(M)
  std::vector<std::size_t> pivot_cols;  // pivot column of each nonzero row of H
  std::size_t rank() const noexcept { return pivot_cols.size(); }
};

HermiteResult hermite_normal_form(const IntMatrix& M);

struct SmithResult {
  IntMatrix D;  // D = U * M * V, diagonal d1 | d2 | ... (nonnegative)
  IntMatrix U;
  IntMatrix V;
  IntVec diagonal() const;
};

SmithResult smith_normal_form(const IntMatrix& M);

// Basis (as rows) of the integer left kernel {y in Z^m : y M = 0}.
IntMatrix integer_left_kernel(const IntMatrix& M);

Int determinant(const IntMatrix& M);
Rat determinant(const RatMatrix& M);

struct RowEchelon {
  RatMatrix R;  // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivot_cols;
};

RowEchelon reduced_row_echelon(const RatMatrix& M);
std::size_t rank(const RatMatrix& M);
std::size_t rank(const IntMatrix& M);

// Basis of {x : M x = 0}, one vector per free column.
std::vector<RatVec> nullspace(const RatMatrix& M);

// Some x with M x = b, or nullopt when inconsistent.
std::optional<RatVec> solve(const RatMatrix& M, const RatVec& b);

// Throws Error(InvalidInput) when singular.
RatMatrix inverse(const RatMatrix& M);

// Primitive integer vectors spanning the orthogonal complement of the
// rational span of `vectors` inside Q^n.
std::vector<IntVec> orthogonal_complement(const std::vector<RatVec>& vectors, std::size_t n);

}  // namespace stackyfan
