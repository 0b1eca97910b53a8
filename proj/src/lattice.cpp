#include "stackyfan/lattice.hpp"

#include "stackyfan/error.hpp"
#include "stackyfan/normal_form.hpp"

#include <algorithm>

namespace stackyfan {

namespace {

constexpr std::size_t kMaxCosetReps = 1'000'000;

// Integer row matrix of d * L for a common multiple d of L's denominator.
IntMatrix scaled_basis(const Lattice& L, const Int& d) {
  IntMatrix B = L.basis();
  Int f = d / L.denominator();
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) B(i, j) *= f;
  return B;
}

std::vector<RatVec> rows_over(const IntMatrix& B, const Int& d) {
  std::vector<RatVec> out;
  for (std::size_t i = 0; i < B.rows(); ++i) {
    RatVec v(B.cols());
    for (std::size_t j = 0; j < B.cols(); ++j) v[j] = Rat(B(i, j), d);
    for (auto& x : v) x.canonicalize();
    out.push_back(std::move(v));
  }
  return out;
}

bool lex_less(const RatVec& a, const RatVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

Lattice Lattice::standard(std::size_t n) {
  std::vector<IntVec> e;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec v(n);
    v[i] = 1;
    e.push_back(v);
  }
  return lattice_from_generators(e, n);
}

Lattice Lattice::zero(std::size_t n) { return lattice_from_generators({}, n); }

std::vector<RatVec> Lattice::generators() const { return rows_over(basis_, denominator_); }

bool Lattice::contains(const RatVec& x) const {
  RatVec v(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) v[j] = x[j] * denominator_;
  if (!is_integral(v)) return false;
  IntVec y = to_int(v);
  std::size_t r = 0;
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    std::size_t p = 0;
    while (basis_(i, p) == 0) ++p;
    for (std::size_t j = 0; j < p; ++j)
      if (y[j] != 0) return false;
    if (y[p] % basis_(i, p) != 0) return false;
    Int q = y[p] / basis_(i, p);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] -= q * basis_(i, j);
    r = p + 1;
  }
  for (std::size_t j = r; j < y.size(); ++j)
    if (y[j] != 0) return false;
  return is_zero(y);
}

Lattice lattice_from_generators(const std::vector<IntVec>& vectors, std::size_t n) {
  std::vector<RatVec> r;
  r.reserve(vectors.size());
  for (const auto& v : vectors) r.push_back(to_rat(v));
  return lattice_from_rational_generators(r, n);
}

Lattice lattice_from_rational_generators(const std::vector<RatVec>& vectors, std::size_t n) {
  Int d = 1;
  for (const auto& v : vectors) {
    if (v.size() != n) throw Error(ErrorCode::InvalidInput, "generator length differs from ambient rank");
    d = lcm(d, lcm_denominators(v));
  }
  IntMatrix M(vectors.size(), n);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat s = vectors[i][j] * d;
      M(i, j) = s.get_num();
    }
  HermiteResult h = hermite_normal_form(M);
  const std::size_t r = h.rank();
  Int g = d;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) g = gcd(g, h.H(i, j));
  Lattice L;
  L.ambient_ = n;
  L.denominator_ = d / g;
  L.basis_ = IntMatrix(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) L.basis_(i, j) = h.H(i, j) / g;
  return L;
}

Lattice intersect(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw Error(ErrorCode::RankMismatch, "intersect: ambient ranks differ");
  const std::size_t n = a.ambient_rank();
  Int d = lcm(a.denominator(), b.denominator());
  IntMatrix A = scaled_basis(a, d), B = scaled_basis(b, d);
  // y * [A; -B] = 0 gives the coefficient pairs of common vectors.
  IntMatrix S(A.rows() + B.rows(), n);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) S(i, j) = A(i, j);
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) S(A.rows() + i, j) = -B(i, j);
  IntMatrix K = integer_left_kernel(S);
  std::vector<RatVec> gens;
  for (std::size_t k = 0; k < K.rows(); ++k) {
    RatVec v(n);
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < n; ++j) v[j] += Rat(K(k, i) * A(i, j));
    for (auto& x : v) x /= d;
    gens.push_back(std::move(v));
  }
  return lattice_from_rational_generators(gens, n);
}

Lattice dual_lattice(const Lattice& L) {
  if (!L.full_rank()) throw Error(ErrorCode::NotFullRank, "dual_lattice: lattice does not span the ambient space");
  const std::size_t n = L.ambient_rank();
  RatMatrix inv_t = inverse(to_rat(L.basis())).transpose();
  std::vector<RatVec> gens;
  for (std::size_t i = 0; i < n; ++i) {
    RatVec v = inv_t.row(i);
    for (auto& x : v) x *= L.denominator();
    gens.push_back(std::move(v));
  }
  return lattice_from_rational_generators(gens, n);
}

Lattice saturation(const Lattice& L) {
  const std::size_t n = L.ambient_rank();
  if (L.rank() == 0) return Lattice::zero(n);
  std::vector<IntVec> K = orthogonal_complement(L.generators(), n);
  IntMatrix Kt(n, K.size());
  for (std::size_t i = 0; i < K.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) Kt(j, i) = K[i][j];
  return lattice_from_generators(integer_left_kernel(Kt).row_list(), n);
}

bool is_sublattice(const Lattice& sub, const Lattice& sup) {
  if (sub.ambient_rank() != sup.ambient_rank()) return false;
  for (const auto& g : sub.generators())
    if (!sup.contains(g)) return false;
  return true;
}

RatVec reduce_modulo(const RatVec& x, const Lattice& L) {
  RatVec y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) y[j] = x[j] * L.denominator();
  const IntMatrix& B = L.basis();
  for (std::size_t i = 0; i < B.rows(); ++i) {
    std::size_t p = 0;
    while (B(i, p) == 0) ++p;
    Rat ratio = y[p] / Rat(B(i, p));
    Int q = floor_rat(ratio);
    if (q == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) y[j] -= q * B(i, j);
  }
  for (auto& v : y) v /= L.denominator();
  return y;
}

Int FiniteAbelianGroup::order() const {
  Int o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

namespace {

struct Coordinates {
  IntMatrix C;   // rows: sub basis in sup coordinates
  RatMatrix sup_rows;
};

Coordinates sub_in_sup(const Lattice& sup, const Lattice& sub) {
  if (sup.ambient_rank() != sub.ambient_rank()) throw Error(ErrorCode::RankMismatch, "quotient: ambient ranks differ");
  if (!is_sublattice(sub, sup)) throw Error(ErrorCode::NotSublattice, "quotient: sub is not contained in sup");
  if (sub.rank() != sup.rank()) throw Error(ErrorCode::InvalidInput, "quotient: ranks differ, quotient is infinite");
  const std::size_t r = sup.rank();
  RatMatrix S = RatMatrix::from_rows(sup.generators(), sup.ambient_rank());
  RatMatrix St = S.transpose();
  auto subg = sub.generators();
  IntMatrix C(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    auto c = solve(St, subg[i]);
    IntVec ci = to_int(*c);
    for (std::size_t j = 0; j < r; ++j) C(i, j) = ci[j];
  }
  return {C, S};
}

}  // namespace

FiniteAbelianGroup quotient_group(const Lattice& sup, const Lattice& sub) {
  Coordinates co = sub_in_sup(sup, sub);
  SmithResult s = smith_normal_form(co.C);
  FiniteAbelianGroup g;
  for (const auto& d : s.diagonal())
    if (d > 1) g.invariant_factors.push_back(d);
  return g;
}

Quotient quotient(const Lattice& sup, const Lattice& sub) {
  Coordinates co = sub_in_sup(sup, sub);
  const std::size_t r = sup.rank(), n = sup.ambient_rank();
  SmithResult s = smith_normal_form(co.C);
  IntVec diag = s.diagonal();
  Quotient q;
  for (const auto& d : diag)
    if (d > 1) q.group.invariant_factors.push_back(d);
  if (q.group.order() > kMaxCosetReps) throw Error(ErrorCode::CapExceeded, "quotient: too many cosets to enumerate");
  // c -> c V maps the relation lattice onto diag(d) Z^r, so the cosets are
  // indexed by tuples k with 0 <= k_i < d_i, lifted back through V^{-1}.
  RatMatrix Vinv = inverse(to_rat(s.V));
  RatMatrix lift = Vinv * co.sup_rows;
  std::vector<std::size_t> idx(r, 0);
  while (true) {
    RatVec x(n);
    for (std::size_t i = 0; i < r; ++i)
      if (idx[i] != 0)
        for (std::size_t j = 0; j < n; ++j) x[j] += Rat(static_cast<unsigned long>(idx[i])) * lift(i, j);
    q.coset_reps.push_back(reduce_modulo(x, sub));
    std::size_t i = 0;
    for (; i < r; ++i) {
      if (++idx[i] < diag[i]) break;
      idx[i] = 0;
    }
    if (i == r) break;
  }
  std::sort(q.coset_reps.begin(), q.coset_reps.end(), [](const RatVec& a, const RatVec& b) {
    bool za = is_zero(a), zb = is_zero(b);
    if (za != zb) return za;
    return lex_less(a, b);
  });
  return q;
}

Lattice lattice_in_subspace(const Lattice& L, const std::vector<RatVec>& span) {
  const std::size_t n = L.ambient_rank();
  std::vector<IntVec> K = orthogonal_complement(span, n);
  // y in Z^r with (y B) k = 0 for all k; B = basis / denominator.
  const IntMatrix& B = L.basis();
  IntMatrix A(B.rows(), K.size());
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t k = 0; k < K.size(); ++k) {
      Int s = 0;
      for (std::size_t j = 0; j < n; ++j) s += B(i, j) * K[k][j];
      A(i, k) = s;
    }
  IntMatrix Y = integer_left_kernel(A);
  std::vector<RatVec> gens;
  for (std::size_t t = 0; t < Y.rows(); ++t) {
    RatVec v(n);
    for (std::size_t i = 0; i < B.rows(); ++i)
      for (std::size_t j = 0; j < n; ++j) v[j] += Rat(Y(t, i) * B(i, j));
    for (auto& x : v) x /= L.denominator();
    gens.push_back(std::move(v));
  }
  return lattice_from_rational_generators(gens, n);
}

std::optional<RatVec> affine_meets_lattice(const RatVec& p, const std::vector<RatVec>& span, const Lattice& L) {
  const std::size_t n = L.ambient_rank();
  if (p.size() != n) throw Error(ErrorCode::RankMismatch, "affine_meets_lattice: point rank differs from lattice");
  for (const auto& s : span)
    if (s.size() != n) throw Error(ErrorCode::RankMismatch, "affine_meets_lattice: span vector rank differs");
  // x - p in span  <=>  <x - p, k> = 0 for every k in the orthogonal complement.
  std::vector<IntVec> K = orthogonal_complement(span, n);
  const IntMatrix& B = L.basis();
  const std::size_t r = B.rows(), q = K.size();
  // x = (y B) / den with y in Z^r; require y (B K^t) = den * (p K^t).
  RatVec rhs(q);
  for (std::size_t k = 0; k < q; ++k) rhs[k] = dot(p, K[k]) * L.denominator();
  Int scale = lcm_denominators(rhs);
  IntMatrix A(r, q);
  IntVec b(q);
  for (std::size_t k = 0; k < q; ++k) {
    for (std::size_t i = 0; i < r; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < n; ++j) s += B(i, j) * K[k][j];
      A(i, k) = s * scale;
    }
    Rat t = rhs[k] * scale;
    b[k] = t.get_num();
  }
  // Solve y A = b over Z: with H = U A, set z = y U^{-1} and solve z H = b
  // by forward substitution along the pivots.
  HermiteResult h = hermite_normal_form(A);
  IntVec z(r);
  for (std::size_t i = 0; i < h.rank(); ++i) {
    std::size_t c = h.pivot_cols[i];
    Int acc = b[c];
    for (std::size_t t = 0; t < i; ++t) acc -= z[t] * h.H(t, c);
    if (acc % h.H(i, c) != 0) return std::nullopt;
    z[i] = acc / h.H(i, c);
  }
  IntVec zh = z * h.H;
  if (zh != b) return std::nullopt;
  IntVec y = z * h.U;
  RatVec x(n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) x[j] += Rat(y[i] * B(i, j));
  for (auto& v : x) v /= L.denominator();
  return reduce_modulo(x, lattice_in_subspace(L, span));
}

}  // namespace stackyfan
