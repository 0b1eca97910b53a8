#include "stackyfan/fan.hpp"

#include "stackyfan/error.hpp"
#include "stackyfan/normal_form.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace stackyfan {

WeightedFan::WeightedFan(std::size_t rank, const std::vector<IntVec>& generators, const std::vector<Int>& weights,
                         std::vector<ConeRef> max_cones)
    : rank_(rank) {
  if (generators.size() != weights.size())
    throw Error(ErrorCode::InvalidInput, "fan: number of weights differs from number of rays");
  std::set<IntVec> seen;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != rank) throw Error(ErrorCode::InvalidInput, "fan: ray " + std::to_string(i) + " has wrong length");
    if (is_zero(generators[i])) throw Error(ErrorCode::InvalidInput, "fan: ray " + std::to_string(i) + " is zero");
    IntVec g = primitive_part(generators[i]);
    if (!seen.insert(g).second) throw Error(ErrorCode::InvalidInput, "fan: ray " + std::to_string(i) + " repeats a direction");
    rays_.push_back(Ray{g, weights[i]});
  }
  std::set<ConeRef> cone_set;
  for (auto& c : max_cones) {
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end())
      throw Error(ErrorCode::InvalidInput, "fan: cone lists a ray twice");
    for (auto r : c)
      if (r >= rays_.size()) throw Error(ErrorCode::InvalidInput, "fan: cone references ray " + std::to_string(r) + " out of range");
    if (!cone_set.insert(c).second) throw Error(ErrorCode::InvalidInput, "fan: repeated maximal cone");
  }
  cones_ = std::move(max_cones);
}

IntVec WeightedFan::weighted_generator(std::size_t ray) const {
  IntVec v = rays_[ray].generator;
  for (auto& x : v) x *= rays_[ray].weight;
  return v;
}

IntMatrix WeightedFan::cone_matrix(const ConeRef& cone, bool weighted) const {
  IntMatrix M(cone.size(), rank_);
  for (std::size_t i = 0; i < cone.size(); ++i) {
    IntVec g = weighted ? weighted_generator(cone[i]) : rays_[cone[i]].generator;
    for (std::size_t j = 0; j < rank_; ++j) M(i, j) = g[j];
  }
  return M;
}

std::vector<std::size_t> WeightedFan::cones_containing(const ConeRef& cone) const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < cones_.size(); ++s)
    if (std::includes(cones_[s].begin(), cones_[s].end(), cone.begin(), cone.end())) out.push_back(s);
  return out;
}

bool WeightedFan::is_cone(const ConeRef& cone) const {
  ConeRef c = cone;
  std::sort(c.begin(), c.end());
  for (auto r : c)
    if (r >= rays_.size()) return false;
  return !cones_containing(c).empty();
}

WeightedFan WeightedFan::with_weights(const std::vector<Int>& weights) const {
  std::vector<IntVec> gens;
  for (const auto& r : rays_) gens.push_back(r.generator);
  return WeightedFan(rank_, gens, weights, cones_);
}

bool ValidationReport::valid() const {
  auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
  return all(primitive) && all(positive_weight) && all(simplicial) && all(ray_used) && incompatible_pairs.empty() &&
         complete;
}

std::vector<std::string> ValidationReport::problems() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < primitive.size(); ++i)
    if (!primitive[i]) out.push_back("ray " + std::to_string(i) + " is not primitive");
  for (std::size_t i = 0; i < positive_weight.size(); ++i)
    if (!positive_weight[i]) out.push_back("ray " + std::to_string(i) + " has non-positive weight");
  for (std::size_t i = 0; i < simplicial.size(); ++i)
    if (!simplicial[i]) out.push_back("cone " + std::to_string(i) + " is not simplicial of full dimension");
  for (std::size_t i = 0; i < ray_used.size(); ++i)
    if (!ray_used[i]) out.push_back("ray " + std::to_string(i) + " lies in no maximal cone");
  for (const auto& [a, b] : incompatible_pairs)
    out.push_back("cones " + std::to_string(a) + " and " + std::to_string(b) + " do not meet in a common face");
  if (!complete) out.push_back("fan is not complete");
  return out;
}

namespace {

// Functionals f_i on span(U) with f_i(u_j) = delta_ij: columns of U^t (U U^t)^-1.
RatMatrix coordinate_functionals(const IntMatrix& U) {
  RatMatrix Ur = to_rat(U);
  RatMatrix Ut = Ur.transpose();
  return Ut * inverse(Ur * Ut);
}

void add_equality(HPolytope& P, const RatVec& a, const Rat& c) {
  RatVec neg(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
  if (auto f = make_facet(a, c)) P.add(*f);
  if (auto f = make_facet(neg, -c)) P.add(*f);
}

}  // namespace

bool cones_meet_in_common_face(const WeightedFan& fan, const ConeRef& a, const ConeRef& b) {
  if (a.empty() || b.empty()) return true;
  const std::size_t n = fan.rank();
  IntMatrix Ua = fan.cone_matrix(a, false), Ub = fan.cone_matrix(b, false);
  if (rank(Ua) != a.size() || rank(Ub) != b.size()) return false;
  RatMatrix Fa = coordinate_functionals(Ua), Fb = coordinate_functionals(Ub);
  // {x in a ∩ b : sum of a-coordinates = 1}; a point with a positive
  // coordinate on a non-common ray of a witnesses an improper intersection.
  HPolytope Q(n);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (auto f = make_facet(Fa.col(i), 0)) Q.add(*f);
  for (std::size_t j = 0; j < b.size(); ++j)
    if (auto f = make_facet(Fb.col(j), 0)) Q.add(*f);
  for (const auto& c : orthogonal_complement(to_rat(Ua).row_list(), n)) add_equality(Q, to_rat(c), 0);
  for (const auto& c : orthogonal_complement(to_rat(Ub).row_list(), n)) add_equality(Q, to_rat(c), 0);
  RatVec total(n), outside(n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool common = std::binary_search(b.begin(), b.end(), a[i]);
    for (std::size_t j = 0; j < n; ++j) {
      total[j] += Fa(j, i);
      if (!common) outside[j] += Fa(j, i);
    }
  }
  add_equality(Q, total, 1);
  for (const auto& v : vertices(Q))
    if (dot(v, outside) > 0) return false;
  return true;
}

ValidationReport validate(const WeightedFan& fan) {
  const std::size_t n = fan.rank(), R = fan.num_rays(), C = fan.max_cones().size();
  ValidationReport rep;
  rep.primitive.resize(R);
  rep.positive_weight.resize(R);
  rep.ray_used.assign(R, false);
  for (std::size_t i = 0; i < R; ++i) {
    rep.primitive[i] = gcd_of(fan.rays()[i].generator) == 1;
    rep.positive_weight[i] = fan.rays()[i].weight >= 1;
  }
  rep.simplicial.resize(C);
  for (std::size_t s = 0; s < C; ++s) {
    const ConeRef& c = fan.max_cones()[s];
    rep.simplicial[s] = c.size() == n && determinant(fan.cone_matrix(c, false)) != 0;
    for (auto r : c) rep.ray_used[r] = true;
  }
  if (!std::all_of(rep.simplicial.begin(), rep.simplicial.end(), [](bool b) { return b; }) || C == 0) {
    rep.complete = false;
    return rep;
  }
  for (std::size_t s = 0; s < C; ++s)
    for (std::size_t t = s + 1; t < C; ++t)
      if (!cones_meet_in_common_face(fan, fan.max_cones()[s], fan.max_cones()[t]))
        rep.incompatible_pairs.emplace_back(s, t);

  // Every codimension-one face must be shared by exactly two maximal cones
  // lying on opposite sides of it, and the adjacency graph must be connected.
  std::map<ConeRef, std::vector<std::pair<std::size_t, std::size_t>>> walls;  // face -> (cone, opposite ray)
  for (std::size_t s = 0; s < C; ++s) {
    const ConeRef& c = fan.max_cones()[s];
    for (std::size_t drop = 0; drop < n; ++drop) {
      ConeRef face;
      for (std::size_t i = 0; i < n; ++i)
        if (i != drop) face.push_back(c[i]);
      walls[face].emplace_back(s, c[drop]);
    }
  }
  bool ok = true;
  std::vector<std::vector<std::size_t>> adj(C);
  for (const auto& [face, list] : walls) {
    if (list.size() != 2) {
      ok = false;
      break;
    }
    auto side = [&](std::size_t ray) {
      IntMatrix M(n, n);
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M(i, j) = fan.rays()[face[i]].generator[j];
      for (std::size_t j = 0; j < n; ++j) M(n - 1, j) = fan.rays()[ray].generator[j];
      return sgn(determinant(M));
    };
    if (side(list[0].second) * side(list[1].second) >= 0) {
      ok = false;
      break;
    }
    adj[list[0].first].push_back(list[1].first);
    adj[list[1].first].push_back(list[0].first);
  }
  if (ok) {
    std::vector<bool> seen(C, false);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
      auto s = q.front();
      q.pop();
      for (auto t : adj[s])
        if (!seen[t]) {
          seen[t] = true;
          ++count;
          q.push(t);
        }
    }
    ok = count == C;
  }
  rep.complete = ok;
  return rep;
}

void require_valid(const WeightedFan& fan) {
  ValidationReport rep = validate(fan);
  if (rep.valid()) return;
  std::string msg = "invalid weighted fan:";
  for (const auto& p : rep.problems()) msg += " " + p + ";";
  throw Error(ErrorCode::InvalidInput, msg);
}

CommonFace common_face(const WeightedFan& fan, const ConeRef& a, const ConeRef& b) {
  ConeRef sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (!fan.is_cone(sa) || !fan.is_cone(sb)) throw Error(ErrorCode::InvalidInput, "common_face: not a cone of the fan");
  CommonFace out;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out.face));
  if (!cones_meet_in_common_face(fan, sa, sb))
    throw Error(ErrorCode::InvalidInput, "common_face: cones do not intersect in a common face");
  out.perp_basis = nullspace(to_rat(fan.cone_matrix(out.face, false)));
  return out;
}

WeightedFan dual_fan(const HPolytope& P) {
  const std::size_t n = P.rank();
  std::vector<RatVec> verts = vertices(P);
  if (affine_dimension(verts) != static_cast<int>(n))
    throw Error(ErrorCode::InvalidInput, "dual_fan: polytope is not full-dimensional");
  std::vector<std::size_t> keep = supporting_facets(P);
  std::vector<IntVec> gens;
  std::vector<Int> weights;
  std::map<std::size_t, std::size_t> index;
  for (auto i : keep) {
    index[i] = gens.size();
    gens.push_back(P.facets()[i].normal);
    weights.push_back(P.facets()[i].weight.value_or(Int(1)));
  }
  std::vector<ConeRef> cones;
  for (const auto& v : verts) {
    ConeRef c;
    for (auto i : tight_facets(P, v))
      if (index.count(i)) c.push_back(index[i]);
    if (c.size() != n) throw Error(ErrorCode::NotSimplicial, "dual_fan: vertex " + [&] {
      std::string s;
      for (std::size_t j = 0; j < v.size(); ++j) s += (j ? "," : "") + v[j].get_str();
      return "(" + s + ")";
    }() + " is not simple");
    cones.push_back(c);
  }
  return WeightedFan(n, gens, weights, cones);
}

}  // namespace stackyfan
