#include "stackyfan/polytope.hpp"

#include "stackyfan/error.hpp"
#include "stackyfan/normal_form.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace stackyfan {

namespace {

// Calls fn on every k-subset of {0..m-1} in lexicographic order.
void for_each_subset(std::size_t m, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

RatMatrix normal_rows(const HPolytope& P, const std::vector<std::size_t>& rows) {
  RatMatrix M(rows.size(), P.rank());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < P.rank(); ++j) M(i, j) = P.facets()[rows[i]].normal[j];
  return M;
}

std::vector<RatVec> basic_feasible_points(const HPolytope& P) {
  const std::size_t n = P.rank(), m = P.facets().size();
  std::set<RatVec> found;
  for_each_subset(m, n, [&](const std::vector<std::size_t>& rows) {
    RatMatrix M = normal_rows(P, rows);
    if (determinant(M) == 0) return;
    RatVec b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = P.facets()[rows[i]].offset;
    auto x = solve(M, b);
    if (x && P.contains(*x)) found.insert(*x);
  });
  return {found.begin(), found.end()};
}

bool has_recession_direction(const HPolytope& P) {
  const std::size_t n = P.rank(), m = P.facets().size();
  bool unbounded = false;
  for_each_subset(m, n - 1, [&](const std::vector<std::size_t>& rows) {
    if (unbounded) return;
    RatMatrix M = normal_rows(P, rows);
    auto ns = nullspace(M);
    if (ns.size() != 1) return;
    const RatVec& d = ns[0];
    bool all_pos = true, all_neg = true;
    for (const auto& f : P.facets()) {
      Rat s = dot(d, f.normal);
      if (s < 0) all_pos = false;
      if (s > 0) all_neg = false;
    }
    if (all_pos || all_neg) unbounded = true;
  });
  return unbounded;
}

RatVec integer_point_as_rat(const IntVec& v) { return to_rat(v); }

}  // namespace

std::optional<Facet> make_facet(const RatVec& normal, const Rat& offset, std::optional<Int> weight) {
  Int l = lcm_denominators(normal);
  IntVec N(normal.size());
  for (std::size_t i = 0; i < normal.size(); ++i) {
    Rat s = normal[i] * l;
    N[i] = s.get_num();
  }
  Int g = gcd_of(N);
  if (g == 0) {
    if (offset > 0) return Facet{IntVec(normal.size()), Rat(1), weight};
    return std::nullopt;
  }
  for (auto& x : N) x /= g;
  Rat off = offset * l / g;
  return Facet{N, off, weight};
}

HPolytope::HPolytope(std::size_t rank, std::vector<Facet> facets) : rank_(rank) {
  for (auto& f : facets) {
    if (f.normal.size() != rank) throw Error(ErrorCode::RankMismatch, "facet normal length differs from polytope rank");
    add(f);
  }
}

HPolytope HPolytope::empty(std::size_t rank) {
  HPolytope P(rank);
  P.facets_.push_back(Facet{IntVec(rank), Rat(1), std::nullopt});
  return P;
}

void HPolytope::add(const Facet& f) {
  for (const auto& g : facets_)
    if (g.normal == f.normal && g.offset == f.offset) return;
  facets_.push_back(f);
}

bool HPolytope::contains(const RatVec& x) const {
  for (const auto& f : facets_)
    if (dot(x, f.normal) < f.offset) return false;
  return true;
}

bool HPolytope::contains(const IntVec& x) const {
  for (const auto& f : facets_)
    if (Rat(dot(x, f.normal)) < f.offset) return false;
  return true;
}

bool HPolytope::weighted() const {
  if (facets_.empty()) return false;
  for (const auto& f : facets_)
    if (!f.weight) return false;
  return true;
}

std::vector<RatVec> vertices(const HPolytope& P) {
  const std::size_t n = P.rank();
  if (n == 0) {
    if (P.contains(RatVec{})) return {RatVec{}};
    return {};
  }
  RatMatrix A = normal_rows(P, [&] {
    std::vector<std::size_t> all(P.facets().size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }());
  if (rank(A) < n) {
    // Nonempty implies a lineality direction; decide emptiness on the
    // orthogonal complement of the lineality space.
    HPolytope Q = P;
    for (const auto& k : nullspace(A)) {
      IntVec dir = primitive_direction(k);
      IntVec neg(dir.size());
      for (std::size_t i = 0; i < dir.size(); ++i) neg[i] = -dir[i];
      Q.add(Facet{dir, Rat(0), std::nullopt});
      Q.add(Facet{neg, Rat(0), std::nullopt});
    }
    if (!vertices(Q).empty()) throw Error(ErrorCode::Unbounded, "polyhedron is unbounded");
    return {};
  }
  std::vector<RatVec> pts = basic_feasible_points(P);
  if (pts.empty()) return {};
  if (has_recession_direction(P)) throw Error(ErrorCode::Unbounded, "polyhedron is unbounded");
  return pts;
}

std::vector<std::size_t> tight_facets(const HPolytope& P, const RatVec& x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < P.facets().size(); ++i)
    if (dot(x, P.facets()[i].normal) == P.facets()[i].offset) out.push_back(i);
  return out;
}

int affine_dimension(const std::vector<RatVec>& points) {
  if (points.empty()) return -1;
  const std::size_t n = points[0].size();
  RatMatrix D(points.size() - 1, n);
  for (std::size_t i = 1; i < points.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) D(i - 1, j) = points[i][j] - points[0][j];
  return static_cast<int>(rank(D));
}

int dimension(const HPolytope& P) { return affine_dimension(vertices(P)); }

std::vector<std::size_t> supporting_facets(const HPolytope& P) {
  std::vector<RatVec> verts = vertices(P);
  const int dim = affine_dimension(verts);
  std::vector<std::size_t> out;
  if (dim <= 0) return out;
  for (std::size_t i = 0; i < P.facets().size(); ++i) {
    std::vector<RatVec> tight;
    for (const auto& v : verts)
      if (dot(v, P.facets()[i].normal) == P.facets()[i].offset) tight.push_back(v);
    if (tight.size() < verts.size() && affine_dimension(tight) == dim - 1) out.push_back(i);
  }
  return out;
}

std::vector<IntVec> lattice_points(const HPolytope& P, const EnumerationOptions& opts) {
  const std::size_t n = P.rank();
  std::vector<RatVec> verts = vertices(P);
  if (verts.empty()) return {};
  if (n == 0) return {IntVec{}};
  IntVec lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rat mn = verts[0][j], mx = verts[0][j];
    for (const auto& v : verts) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    lo[j] = ceil_rat(mn);
    hi[j] = floor_rat(mx);
    if (lo[j] > hi[j]) return {};
  }
  Int volume = 1;
  for (std::size_t j = 0; j < n; ++j) volume *= hi[j] - lo[j] + 1;
  if (volume > Int(std::to_string(opts.cap)))
    throw Error(ErrorCode::CapExceeded, "lattice enumeration box has " + volume.get_str() + " candidates, cap is " +
                                            std::to_string(opts.cap));

  // Integer points satisfy <x, a> >= ceil(c) for integral a.
  std::vector<IntVec> normals;
  IntVec bounds;
  for (const auto& f : P.facets()) {
    normals.push_back(f.normal);
    bounds.push_back(ceil_rat(f.offset));
  }
  std::vector<IntVec> out;
  IntVec x = lo;
  // partial[i] = <prefix x_0..x_{k-1}, a_i> accumulated along the recursion
  std::function<void(std::size_t, const IntVec&)> rec = [&](std::size_t k, const IntVec& partial) {
    if (k + 1 == n) {
      Int a = lo[k], b = hi[k];
      for (std::size_t i = 0; i < normals.size(); ++i) {
        const Int& coef = normals[i][k];
        Int rest = bounds[i] - partial[i];
        if (coef == 0) {
          if (rest > 0) return;
          continue;
        }
        Int q;
        if (coef > 0) {
          mpz_cdiv_q(q.get_mpz_t(), rest.get_mpz_t(), coef.get_mpz_t());
          if (q > a) a = q;
        } else {
          mpz_fdiv_q(q.get_mpz_t(), rest.get_mpz_t(), coef.get_mpz_t());
          if (q < b) b = q;
        }
      }
      for (Int t = a; t <= b; ++t) {
        x[k] = t;
        out.push_back(x);
      }
      return;
    }
    IntVec next(partial.size());
    for (Int t = lo[k]; t <= hi[k]; ++t) {
      x[k] = t;
      for (std::size_t i = 0; i < normals.size(); ++i) next[i] = partial[i] + t * normals[i][k];
      rec(k + 1, next);
    }
  };
  rec(0, IntVec(normals.size()));
  return out;
}

std::uint64_t count_lattice_points(const HPolytope& P, const EnumerationOptions& opts) {
  return lattice_points(P, opts).size();
}

std::vector<RatVec> lattice_points(const HPolytope& P, const Lattice& L, const EnumerationOptions& opts) {
  if (L.ambient_rank() != P.rank()) throw Error(ErrorCode::RankMismatch, "lattice_points: lattice rank differs");
  if (!L.full_rank()) throw Error(ErrorCode::NotFullRank, "lattice_points: lattice must have full rank");
  std::vector<RatVec> out;
  if (L == Lattice::standard(P.rank())) {
    for (const auto& p : lattice_points(P, opts)) out.push_back(integer_point_as_rat(p));
    return out;
  }
  // x = y * Bl with y integral.
  const std::size_t n = P.rank();
  RatMatrix Bl = to_rat(L.basis());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) Bl(i, j) /= L.denominator();
  HPolytope Q(n);
  for (const auto& f : P.facets()) {
    auto g = make_facet(matvec(Bl, to_rat(f.normal)), f.offset, f.weight);
    if (g) Q.add(*g);
  }
  for (const auto& y : lattice_points(Q, opts)) out.push_back(to_rat(y) * Bl);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct Row {
  RatVec a;
  Rat c;
};

// Keeps one tightest row per normal direction and, when the point set is
// full-dimensional, only rows that support a facet of conv(points).
std::vector<Row> prune(const std::vector<Row>& rows, const std::vector<RatVec>& points, std::size_t dim) {
  std::map<IntVec, Rat> best;
  for (const auto& r : rows) {
    auto f = make_facet(r.a, r.c);
    if (!f) continue;
    auto it = best.find(f->normal);
    if (it == best.end() || it->second < f->offset) best[f->normal] = f->offset;
  }
  const bool full = affine_dimension(points) == static_cast<int>(dim);
  std::vector<Row> out;
  for (const auto& [normal, off] : best) {
    if (is_zero(normal)) {
      out.push_back({to_rat(normal), off});
      continue;
    }
    if (full) {
      std::vector<RatVec> tight;
      for (const auto& p : points)
        if (dot(p, normal) == off) tight.push_back(p);
      if (affine_dimension(tight) != static_cast<int>(dim) - 1) continue;
    }
    out.push_back({to_rat(normal), off});
  }
  return out;
}

}  // namespace

HPolytope project(const HPolytope& P, const IntMatrix& pi) {
  const std::size_t n = P.rank(), d = pi.rows();
  if (pi.cols() != n) throw Error(ErrorCode::RankMismatch, "project: matrix width differs from polytope rank");
  RowEchelon e = reduced_row_echelon(to_rat(pi));
  if (e.pivot_cols.size() != d) throw Error(ErrorCode::InvalidInput, "project: projection matrix must have full row rank");
  std::vector<RatVec> verts = vertices(P);
  if (verts.empty()) return HPolytope::empty(d);

  // Complete pi to an invertible M with unit rows on the non-pivot columns;
  // z = M x and the trailing n - d coordinates of z are eliminated.
  RatMatrix M(n, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, j) = pi(i, j);
  {
    std::vector<bool> piv(n, false);
    for (auto c : e.pivot_cols) piv[c] = true;
    std::size_t r = d;
    for (std::size_t j = 0; j < n; ++j)
      if (!piv[j]) M(r++, j) = 1;
  }
  RatMatrix MinvT = inverse(M).transpose();
  std::vector<Row> rows;
  for (const auto& f : P.facets()) rows.push_back({matvec(MinvT, to_rat(f.normal)), f.offset});
  std::vector<RatVec> zpts;
  for (const auto& v : verts) zpts.push_back(matvec(M, v));

  for (std::size_t k = n; k-- > d;) {
    std::vector<Row> pos, neg, next;
    for (auto& r : rows) {
      if (r.a[k] > 0) pos.push_back(r);
      else if (r.a[k] < 0) neg.push_back(r);
      else next.push_back(r);
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        Rat fp = -q.a[k], fq = p.a[k];
        Row c{RatVec(k + 1), fp * p.c + fq * q.c};
        for (std::size_t j = 0; j <= k; ++j) c.a[j] = fp * p.a[j] + fq * q.a[j];
        next.push_back(std::move(c));
      }
    for (auto& r : next) r.a.resize(k);
    for (auto& z : zpts) z.resize(k);
    rows = prune(next, zpts, k);
  }
  HPolytope out(d);
  for (const auto& r : rows) {
    auto f = make_facet(r.a, r.c);
    if (f) out.add(*f);
  }
  return out;
}

IntMatrix kernel_lattice_basis(const IntMatrix& pi) { return integer_left_kernel(pi.transpose()); }

Slice slice(const HPolytope& P, const IntMatrix& pi, const RatVec& alpha, const RatVec& origin) {
  const std::size_t n = P.rank(), d = pi.rows();
  if (pi.cols() != n || origin.size() != n || alpha.size() != d)
    throw Error(ErrorCode::RankMismatch, "slice: dimension mismatch");
  if (rank(pi) != d) throw Error(ErrorCode::InvalidInput, "slice: projection is not surjective");
  if (matvec(to_rat(pi), origin) != alpha) throw Error(ErrorCode::InvalidInput, "slice: origin does not project to alpha");
  Slice s;
  s.kernel_basis = kernel_lattice_basis(pi);
  s.origin = origin;
  const std::size_t k = s.kernel_basis.rows();
  s.polytope = HPolytope(k);
  for (std::size_t i = 0; i < P.facets().size(); ++i) {
    const Facet& f = P.facets()[i];
    IntVec restricted = matvec(s.kernel_basis, f.normal);
    Rat off = f.offset - dot(origin, f.normal);
    Int content = gcd_of(restricted);
    if (content == 0) {
      if (off > 0) {
        s.polytope = HPolytope::empty(k);
        s.sources = {{}};
        return s;
      }
      continue;
    }
    IntVec normal = primitive_part(restricted);
    Rat o = off / content;
    std::size_t at = s.polytope.facets().size();
    for (std::size_t j = 0; j < s.polytope.facets().size(); ++j)
      if (s.polytope.facets()[j].normal == normal && s.polytope.facets()[j].offset == o) at = j;
    if (at == s.polytope.facets().size()) {
      s.polytope.add(Facet{normal, o, f.weight});
      s.sources.emplace_back();
    }
    s.sources[at].emplace_back(i, content);
  }
  return s;
}

}  // namespace stackyfan
