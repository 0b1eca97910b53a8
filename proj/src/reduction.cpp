#include "stackyfan/reduction.hpp"

#include "stackyfan/error.hpp"
#include "stackyfan/normal_form.hpp"
#include "stackyfan/picard.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace stackyfan {

Subtorus::Subtorus(std::size_t ambient_rank, const std::vector<IntVec>& rows) : n_(ambient_rank) {
  for (const auto& r : rows)
    if (r.size() != ambient_rank) throw Error(ErrorCode::RankMismatch, "subtorus: row has wrong length");
  Lattice L = lattice_from_generators(rows, ambient_rank);
  if (L.rank() != rows.size()) throw Error(ErrorCode::InvalidInput, "subtorus: rows are linearly dependent");
  basis_ = saturation(L).basis();
  if (basis_.cols() != ambient_rank) basis_ = IntMatrix(basis_.rows(), ambient_rank);
}

namespace {

RatVec project_point(const IntMatrix& pi, const RatVec& x) { return matvec(to_rat(pi), x); }

bool in_convex_hull(const std::vector<RatVec>& pts, const RatVec& a) {
  if (pts.empty()) return false;
  const std::size_t k = pts.size(), d = a.size();
  if (k == 1) return pts[0] == a;
  if (d == 1) {
    Rat lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return lo <= a[0] && a[0] <= hi;
  }
  // Feasibility of lambda >= 0, sum lambda = 1, sum lambda_i p_i = a.
  HPolytope L(k);
  for (std::size_t i = 0; i < k; ++i) {
    RatVec e(k);
    e[i] = 1;
    L.add(*make_facet(e, 0));
  }
  auto equal = [&](const RatVec& row, const Rat& c) {
    RatVec neg(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) neg[i] = -row[i];
    if (auto f = make_facet(row, c)) L.add(*f);
    if (auto f = make_facet(neg, -c)) L.add(*f);
  };
  equal(RatVec(k, Rat(1)), 1);
  for (std::size_t j = 0; j < d; ++j) {
    RatVec row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = pts[i][j];
    equal(row, a[j]);
  }
  return !vertices(L).empty();
}

HPolytope with_default_weights(const HPolytope& P) {
  HPolytope out(P.rank());
  for (auto f : P.facets()) {
    if (!f.weight) f.weight = Int(1);
    out.add(f);
  }
  return out;
}

// Integer x with pi x = alpha, if any.
std::optional<IntVec> integral_preimage(const IntMatrix& pi, const IntVec& alpha) {
  const std::size_t n = pi.cols();
  if (pi.rows() == 0) return IntVec(n);
  auto x = solve(to_rat(pi), to_rat(alpha));
  if (!x) return std::nullopt;
  std::vector<RatVec> span;
  for (const auto& k : kernel_lattice_basis(pi).row_list()) span.push_back(to_rat(k));
  auto y = affine_meets_lattice(*x, span, Lattice::standard(n));
  if (!y) return std::nullopt;
  return to_int(*y);
}

std::optional<Slice> integral_slice(const HPolytope& N, const IntMatrix& pi, const IntVec& alpha) {
  auto x0 = integral_preimage(pi, alpha);
  if (!x0) return std::nullopt;
  return slice(N, pi, to_rat(alpha), to_rat(*x0));
}

std::uint64_t slice_count(const std::optional<Slice>& s, const EnumerationOptions& opts) {
  return s ? count_lattice_points(s->polytope, opts) : 0;
}

}  // namespace

HPolytope image_polytope(const HPolytope& P, const Subtorus& T) {
  if (P.rank() != T.ambient_rank()) throw Error(ErrorCode::RankMismatch, "subtorus rank differs from polytope rank");
  if (T.dimension() == 0) return vertices(P).empty() ? HPolytope::empty(0) : HPolytope(0);
  return project(P, T.basis());
}

std::vector<std::vector<RatVec>> critical_images(const HPolytope& P, const Subtorus& T) {
  if (P.rank() != T.ambient_rank()) throw Error(ErrorCode::RankMismatch, "subtorus rank differs from polytope rank");
  const std::size_t d = T.dimension();
  std::vector<RatVec> verts = vertices(P);
  if (verts.empty() || d == 0) return {};
  const IntMatrix& pi = T.basis();

  std::set<std::vector<std::size_t>> faces;
  for (const auto& v : verts) {
    std::vector<std::size_t> tv = tight_facets(P, v);
    if (tv.size() > 24) throw Error(ErrorCode::CapExceeded, "critical_images: vertex lies on too many facets");
    for (unsigned long mask = 0; mask < (1UL << tv.size()); ++mask) {
      std::vector<std::size_t> face;
      for (std::size_t k = 0; k < verts.size(); ++k) {
        bool tight = true;
        for (std::size_t i = 0; i < tv.size() && tight; ++i)
          if ((mask & (1UL << i)) && dot(verts[k], P.facets()[tv[i]].normal) != P.facets()[tv[i]].offset) tight = false;
        if (tight) face.push_back(k);
      }
      faces.insert(face);
    }
  }
  std::set<std::vector<RatVec>> images;
  for (const auto& face : faces) {
    RatMatrix D(face.size() - 1, P.rank());
    for (std::size_t i = 1; i < face.size(); ++i)
      for (std::size_t j = 0; j < P.rank(); ++j) D(i - 1, j) = verts[face[i]][j] - verts[face[0]][j];
    if (face.size() > 1 && rank(D * to_rat(pi).transpose()) == d) continue;
    std::set<RatVec> img;
    for (auto k : face) img.insert(project_point(pi, verts[k]));
    images.insert(std::vector<RatVec>(img.begin(), img.end()));
  }
  return {images.begin(), images.end()};
}

std::vector<Rat> critical_values(const HPolytope& P, const Subtorus& T) {
  if (T.dimension() != 1) throw Error(ErrorCode::InvalidInput, "critical_values: subtorus must be one-dimensional");
  std::set<Rat> vals;
  for (const auto& img : critical_images(P, T))
    for (const auto& p : img) vals.insert(p[0]);
  return {vals.begin(), vals.end()};
}

std::vector<BSValue> bs_values(const HPolytope& P, const Subtorus& T, const EnumerationOptions& opts) {
  HPolytope image = image_polytope(P, T);
  auto crit = critical_images(P, T);
  std::vector<BSValue> out;
  for (const auto& a : lattice_points(image, opts)) {
    BSValue b{a, true};
    RatVec ar = to_rat(a);
    for (const auto& img : crit)
      if (in_convex_hull(img, ar)) {
        b.regular = false;
        break;
      }
    out.push_back(std::move(b));
  }
  return out;
}

ReducedOrbifold reduce_at(const HPolytope& P0, const Subtorus& T, const RatVec& alpha) {
  if (P0.rank() != T.ambient_rank()) throw Error(ErrorCode::RankMismatch, "subtorus rank differs from polytope rank");
  const std::size_t n = P0.rank(), d = T.dimension();
  if (alpha.size() != d) throw Error(ErrorCode::RankMismatch, "reduce_at: alpha has wrong length");
  HPolytope P = with_default_weights(P0);
  const IntMatrix& pi = T.basis();
  RatVec x0 = d == 0 ? RatVec(n) : *solve(to_rat(pi), alpha);
  if (is_integral(alpha))
    if (auto xi = integral_preimage(pi, to_int(alpha))) x0 = to_rat(*xi);

  ReducedOrbifold out;
  out.alpha = alpha;
  out.slice = slice(P, pi, alpha, x0);
  const std::size_t k = n - d;
  std::vector<RatVec> verts = vertices(out.slice.polytope);
  if (verts.empty()) throw Error(ErrorCode::EmptySlice, "reduce_at: the level set does not meet the polytope");
  out.polytope = HPolytope(k);
  if (k == 0) return out;
  if (affine_dimension(verts) != static_cast<int>(k))
    throw Error(ErrorCode::NotOrbifold, "reduce_at: the reduced polytope is not full-dimensional");

  // The image of w_F a_F in the kernel coordinates is w_F * k_F times the
  // primitive slice normal.
  for (auto j : supporting_facets(out.slice.polytope)) {
    Facet f = out.slice.polytope.facets()[j];
    Int w = 1;
    for (const auto& [src, content] : out.slice.sources[j]) {
      Int t = *P.facets()[src].weight * content;
      mpz_lcm(w.get_mpz_t(), w.get_mpz_t(), t.get_mpz_t());
    }
    f.weight = w;
    out.polytope.add(f);
  }
  try {
    out.fan = dual_fan(out.polytope);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotSimplicial) throw Error(ErrorCode::NotOrbifold, std::string("reduce_at: ") + e.what());
    throw;
  }
  return out;
}

std::uint64_t leaf_h0(const WeightedFan& fan, const IntVec& l, const Subtorus& T, const IntVec& alpha,
                      const EnumerationOptions& opts) {
  if (fan.rank() != T.ambient_rank()) throw Error(ErrorCode::RankMismatch, "subtorus rank differs from fan rank");
  if (alpha.size() != T.dimension()) throw Error(ErrorCode::RankMismatch, "leaf_h0: alpha has wrong length");
  HPolytope N = newton_polytope(fan, l);
  std::uint64_t direct = 0;
  for (const auto& x : lattice_points(N, opts))
    if (matvec(T.basis(), x) == alpha) ++direct;
  if (slice_count(integral_slice(N, T.basis(), alpha), opts) != direct)
    throw std::logic_error("leaf_h0: slice count differs from fiber count");
  return direct;
}

ReductionReport qr_rq_report(const WeightedFan& fan, const IntVec& l, const Subtorus& T, const EnumerationOptions& opts) {
  if (fan.rank() != T.ambient_rank()) throw Error(ErrorCode::RankMismatch, "subtorus rank differs from fan rank");
  HPolytope N = newton_polytope(fan, l);
  ReductionReport rep;
  std::vector<IntVec> pts = lattice_points(N, opts);
  rep.total_h0 = pts.size();
  std::map<IntVec, std::uint64_t> fiber;
  for (const auto& x : pts) ++fiber[matvec(T.basis(), x)];
  rep.image = image_polytope(N, T);
  rep.critical = critical_images(N, T);
  for (const auto& b : bs_values(N, T, opts)) {
    Leaf leaf;
    leaf.alpha = b.alpha;
    leaf.regular = b.regular;
    auto it = fiber.find(b.alpha);
    leaf.h0 = it == fiber.end() ? 0 : it->second;
    leaf.slice = integral_slice(N, T.basis(), b.alpha);
    if (slice_count(leaf.slice, opts) != leaf.h0)
      throw std::logic_error("qr_rq_report: slice count differs from fiber count");
    try {
      leaf.reduced = reduce_at(N, T, to_rat(b.alpha));
    } catch (const Error& e) {
      leaf.reduction_error = std::string(error_name(e.code())) + ": " + e.what();
    }
    rep.leaf_sum += leaf.h0;
    rep.leaves.push_back(std::move(leaf));
  }
  rep.total_check = rep.leaf_sum == rep.total_h0;
  return rep;
}

}  // namespace stackyfan
