#include "stackyfan/picard.hpp"

#include "stackyfan/error.hpp"
#include "stackyfan/normal_form.hpp"
#include "stackyfan/orbifold.hpp"

#include <algorithm>

namespace stackyfan {

namespace {

void check_length(const WeightedFan& fan, std::size_t len, const char* what) {
  if (len != fan.num_rays())
    throw Error(ErrorCode::RankMismatch, std::string(what) + ": expected one entry per ray (" +
                                             std::to_string(fan.num_rays()) + "), got " + std::to_string(len));
}

// Rows e_i -> (<e_i, w_rho nu_rho>)_rho (weighted) or (<e_i, nu_rho>)_rho.
std::vector<IntVec> shift_rows(const WeightedFan& fan, bool weighted) {
  std::vector<IntVec> rows(fan.rank(), IntVec(fan.num_rays()));
  for (std::size_t r = 0; r < fan.num_rays(); ++r) {
    IntVec g = weighted ? fan.weighted_generator(r) : fan.rays()[r].generator;
    for (std::size_t i = 0; i < fan.rank(); ++i) rows[i][r] = g[i];
  }
  return rows;
}

std::vector<RatVec> as_rat(const std::vector<IntVec>& v) {
  std::vector<RatVec> out;
  for (const auto& x : v) out.push_back(to_rat(x));
  return out;
}

}  // namespace

VertexCharacters to_vertex_characters(const WeightedFan& fan, const IntVec& l) {
  check_length(fan, l.size(), "to_vertex_characters");
  VertexCharacters out;
  for (const auto& c : fan.max_cones()) {
    IntMatrix W = fan.cone_matrix(c, true);
    RatVec b(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) b[i] = l[c[i]];
    auto m = solve(to_rat(W), b);
    if (!m || c.size() != fan.rank()) throw Error(ErrorCode::NotSimplicial, "to_vertex_characters: cone is not simplicial");
    out.push_back(*m);
  }
  return out;
}

IntVec to_ray_data(const WeightedFan& fan, const VertexCharacters& m) {
  if (m.size() != fan.max_cones().size())
    throw Error(ErrorCode::RankMismatch, "to_ray_data: expected one character per maximal cone");
  std::vector<std::optional<Int>> l(fan.num_rays());
  for (std::size_t s = 0; s < m.size(); ++s) {
    if (m[s].size() != fan.rank()) throw Error(ErrorCode::RankMismatch, "to_ray_data: character has wrong length");
    for (auto r : fan.max_cones()[s]) {
      Rat v = dot(m[s], fan.weighted_generator(r));
      if (!is_integral(v))
        throw Error(ErrorCode::NotIntegral, "to_ray_data: character of cone " + std::to_string(s) +
                                                " is not in the cover character lattice");
      if (l[r] && *l[r] != v.get_num())
        throw Error(ErrorCode::Incompatible, "to_ray_data: cones disagree on ray " + std::to_string(r));
      l[r] = v.get_num();
    }
  }
  IntVec out;
  for (std::size_t r = 0; r < l.size(); ++r) {
    if (!l[r]) throw Error(ErrorCode::InvalidInput, "to_ray_data: ray " + std::to_string(r) + " lies in no cone");
    out.push_back(*l[r]);
  }
  return out;
}

HPolytope newton_polytope(const WeightedFan& fan, const IntVec& l) {
  check_length(fan, l.size(), "newton_polytope");
  HPolytope P(fan.rank());
  for (std::size_t r = 0; r < fan.num_rays(); ++r) {
    const Int& w = fan.rays()[r].weight;
    P.add(Facet{fan.rays()[r].generator, ratio(l[r], w), w});
  }
  return P;
}

Sections h0(const WeightedFan& fan, const IntVec& l, const EnumerationOptions& opts) {
  Sections s;
  s.characters = lattice_points(newton_polytope(fan, l), opts);
  s.count = s.characters.size();
  return s;
}

RationalClass rational_class(const WeightedFan& fan, const RatVec& h) {
  check_length(fan, h.size(), "rational_class");
  RatMatrix V = to_rat(IntMatrix::from_rows(shift_rows(fan, false), fan.num_rays()));
  RowEchelon e = reduced_row_echelon(V);
  RatVec rep = h;
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
    Rat f = rep[e.pivot_cols[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < rep.size(); ++j) rep[j] -= f * e.R(i, j);
  }
  return RationalClass{rep};
}

RationalClass chern_class(const WeightedFan& fan, const IntVec& l) {
  check_length(fan, l.size(), "chern_class");
  RatVec h(l.size());
  for (std::size_t r = 0; r < l.size(); ++r) h[r] = ratio(l[r], fan.rays()[r].weight);
  return rational_class(fan, h);
}

std::optional<IntVec> is_orbi_integral(const WeightedFan& fan, const RatVec& h) {
  check_length(fan, h.size(), "is_orbi_integral");
  RatVec p(h.size());
  for (std::size_t r = 0; r < h.size(); ++r) p[r] = h[r] * fan.rays()[r].weight;
  auto x = affine_meets_lattice(p, as_rat(shift_rows(fan, true)), Lattice::standard(h.size()));
  if (!x) return std::nullopt;
  return to_int(*x);
}

TorsionGroup torsion_subgroup(const WeightedFan& fan) {
  FundamentalGroup pi = orbifold_pi1(fan);
  Quotient q = quotient(dual_lattice(pi.lattice), Lattice::standard(fan.rank()));
  return TorsionGroup{q.group, q.coset_reps};
}

BundleClass bundle_class(const WeightedFan& fan, const IntVec& l) {
  check_length(fan, l.size(), "bundle_class");
  Lattice S = lattice_from_generators(shift_rows(fan, true), fan.num_rays());
  return BundleClass{to_int(reduce_modulo(to_rat(l), S))};
}

bool bundles_equivalent(const WeightedFan& fan, const IntVec& l1, const IntVec& l2) {
  return bundle_class(fan, l1) == bundle_class(fan, l2);
}

IntVec shift_bundle(const WeightedFan& fan, const IntVec& l, const RatVec& u) {
  check_length(fan, l.size(), "shift_bundle");
  if (u.size() != fan.rank()) throw Error(ErrorCode::RankMismatch, "shift_bundle: shift has wrong length");
  IntVec out = l;
  for (std::size_t r = 0; r < l.size(); ++r) {
    Rat s = dot(u, fan.weighted_generator(r));
    if (!is_integral(s)) throw Error(ErrorCode::NotIntegral, "shift_bundle: shift is not a character of the cover torus");
    out[r] += s.get_num();
  }
  return out;
}

std::vector<ClassMember> bundles_with_class(const WeightedFan& fan, const RatVec& h, const EnumerationOptions& opts) {
  auto l = is_orbi_integral(fan, h);
  if (!l) throw Error(ErrorCode::NotIntegral, "class is not orbi-integral");
  std::vector<ClassMember> out;
  for (const auto& u : torsion_subgroup(fan).representatives) {
    ClassMember m;
    m.bundle = bundle_class(fan, shift_bundle(fan, *l, u));
    m.torsion_shift = u;
    m.h0 = h0(fan, m.bundle.representative, opts).count;
    out.push_back(std::move(m));
  }
  return out;
}

std::optional<IntVec> coarse_pullback_witness(const WeightedFan& fan, const RatVec& h) {
  check_length(fan, h.size(), "coarse_pullback_witness");
  const std::size_t n = fan.rank(), R = fan.num_rays();
  // Cartier data: on each maximal cone the restriction is <m, nu_rho> with m in Z^n.
  Lattice C = Lattice::standard(R);
  for (const auto& c : fan.max_cones()) {
    std::vector<IntVec> gens;
    for (std::size_t i = 0; i < n; ++i) {
      IntVec g(R);
      for (auto r : c) g[r] = fan.rays()[r].generator[i];
      gens.push_back(g);
    }
    for (std::size_t r = 0; r < R; ++r)
      if (!std::binary_search(c.begin(), c.end(), r)) {
        IntVec e(R);
        e[r] = 1;
        gens.push_back(e);
      }
    C = intersect(C, lattice_from_generators(gens, R));
  }
  auto x = affine_meets_lattice(h, as_rat(shift_rows(fan, false)), C);
  if (!x) return std::nullopt;
  return to_int(*x);
}

}  // namespace stackyfan
