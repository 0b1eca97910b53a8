#include "stackyfan/normal_form.hpp"

#include "stackyfan/error.hpp"

#include <algorithm>

namespace stackyfan {

namespace {

// Index of the row in [from, rows) with the smallest nonzero |M(i, col)|.
std::optional<std::size_t> smallest_in_column(const IntMatrix& M, std::size_t from, std::size_t col) {
  std::optional<std::size_t> best;
  for (std::size_t i = from; i < M.rows(); ++i) {
    if (M(i, col) == 0) continue;
    if (!best || abs(M(i, col)) < abs(M(*best, col))) best = i;
  }
  return best;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& M) {
  HermiteResult res{M, IntMatrix::identity(M.rows()), {}};
  IntMatrix& H = res.H;
  IntMatrix& U = res.U;
  std::size_t r = 0;
  for (std::size_t j = 0; j < H.cols() && r < H.rows(); ++j) {
    while (true) {
      auto p = smallest_in_column(H, r, j);
      if (!p) break;
      H.swap_rows(r, *p);
      U.swap_rows(r, *p);
      bool clean = true;
      for (std::size_t i = r + 1; i < H.rows(); ++i) {
        if (H(i, j) == 0) continue;
        Int q = floor_div(H(i, j), H(r, j));
        H.add_row_multiple(i, r, -q);
        U.add_row_multiple(i, r, -q);
        if (H(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(r, j) == 0) continue;
    if (H(r, j) < 0) {
      H.negate_row(r);
      U.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(H(i, j), H(r, j));
      if (q == 0) continue;
      H.add_row_multiple(i, r, -q);
      U.add_row_multiple(i, r, -q);
    }
    res.pivot_cols.push_back(j);
    ++r;
  }
  return res;
}

IntVec SmithResult::diagonal() const {
  IntVec d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

SmithResult smith_normal_form(const IntMatrix& M) {
  SmithResult res{M, IntMatrix::identity(M.rows()), IntMatrix::identity(M.cols())};
  IntMatrix& D = res.D;
  IntMatrix& U = res.U;
  IntMatrix& V = res.V;
  const std::size_t m = D.rows(), n = D.cols();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Move the smallest nonzero entry of the trailing block to (t, t).
    bool found = false;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (D(i, j) != 0 && (!found || abs(D(i, j)) < abs(D(bi, bj)))) {
          found = true;
          bi = i;
          bj = j;
        }
    if (!found) break;
    while (true) {
      D.swap_rows(t, bi);
      U.swap_rows(t, bi);
      D.swap_cols(t, bj);
      V.swap_cols(t, bj);
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Int q = floor_div(D(i, t), D(t, t));
        D.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        if (D(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Int q = floor_div(D(t, j), D(t, t));
        D.add_col_multiple(j, t, -q);
        V.add_col_multiple(j, t, -q);
        if (D(t, j) != 0) dirty = true;
      }
      if (!dirty) {
        // Enforce divisibility against the rest of the block.
        bool divisible = true;
        for (std::size_t i = t + 1; i < m && divisible; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (D(i, j) % D(t, t) != 0) {
              D.add_row_multiple(t, i, Int(1));
              U.add_row_multiple(t, i, Int(1));
              divisible = false;
              break;
            }
        if (divisible) break;
      }
      // Pick the smallest nonzero entry in row t / column t for the next pass.
      bi = t;
      bj = t;
      for (std::size_t i = t; i < m; ++i)
        if (D(i, t) != 0 && abs(D(i, t)) < abs(D(bi, bj))) {
          bi = i;
          bj = t;
        }
      for (std::size_t j = t; j < n; ++j)
        if (D(t, j) != 0 && abs(D(t, j)) < abs(D(bi, bj))) {
          bi = t;
          bj = j;
        }
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
  return res;
}

IntMatrix integer_left_kernel(const IntMatrix& M) {
  HermiteResult h = hermite_normal_form(M);
  const std::size_t r = h.rank();
  IntMatrix K(M.rows() - r, M.rows());
  for (std::size_t i = r; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.rows(); ++j) K(i - r, j) = h.U(i, j);
  // Canonical basis of the kernel lattice.
  return hermite_normal_form(K).H;
}

Rat determinant(const RatMatrix& M) {
  if (M.rows() != M.cols()) throw Error(ErrorCode::InvalidInput, "determinant of a non-square matrix");
  RatMatrix A = M;
  const std::size_t n = A.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && A(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      A.swap_rows(p, c);
      det = -det;
    }
    det *= A(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (A(i, c) == 0) continue;
      Rat f = A(i, c) / A(c, c);
      A.add_row_multiple(i, c, -f);
    }
  }
  return det;
}

Int determinant(const IntMatrix& M) { return determinant(to_rat(M)).get_num(); }

RowEchelon reduced_row_echelon(const RatMatrix& M) {
  RatMatrix A = M;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
    std::size_t p = r;
    while (p < A.rows() && A(p, c) == 0) ++p;
    if (p == A.rows()) continue;
    A.swap_rows(p, r);
    Rat inv = 1 / A(r, c);
    for (std::size_t j = 0; j < A.cols(); ++j) A(r, j) *= inv;
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (i == r || A(i, c) == 0) continue;
      Rat f = A(i, c);
      A.add_row_multiple(i, r, -f);
    }
    pivots.push_back(c);
    ++r;
  }
  RatMatrix R(r, A.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) R(i, j) = A(i, j);
  return {R, pivots};
}

std::size_t rank(const RatMatrix& M) { return reduced_row_echelon(M).pivot_cols.size(); }
std::size_t rank(const IntMatrix& M) { return hermite_normal_form(M).rank(); }

std::vector<RatVec> nullspace(const RatMatrix& M) {
  RowEchelon e = reduced_row_echelon(M);
  std::vector<bool> is_pivot(M.cols(), false);
  for (auto p : e.pivot_cols) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < M.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVec v(M.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) v[e.pivot_cols[i]] = -e.R(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> solve(const RatMatrix& M, const RatVec& b) {
  RatMatrix aug(M.rows(), M.cols() + 1);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) aug(i, j) = M(i, j);
    aug(i, M.cols()) = b[i];
  }
  RowEchelon e = reduced_row_echelon(aug);
  RatVec x(M.cols());
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
    if (e.pivot_cols[i] == M.cols()) return std::nullopt;
    x[e.pivot_cols[i]] = e.R(i, M.cols());
  }
  return x;
}

RatMatrix inverse(const RatMatrix& M) {
  const std::size_t n = M.rows();
  if (M.cols() != n) throw Error(ErrorCode::InvalidInput, "inverse of a non-square matrix");
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = M(i, j);
    aug(i, n + i) = 1;
  }
  RowEchelon e = reduced_row_echelon(aug);
  if (e.pivot_cols.size() < n || e.pivot_cols[n - 1] >= n) throw Error(ErrorCode::InvalidInput, "singular matrix");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.R(i, n + j);
  return inv;
}

std::vector<IntVec> orthogonal_complement(const std::vector<RatVec>& vectors, std::size_t n) {
  RatMatrix A = RatMatrix::from_rows(vectors, n);
  std::vector<IntVec> out;
  for (const auto& v : nullspace(A)) out.push_back(primitive_direction(v));
  return out;
}

}  // namespace stackyfan
