#include "stackyfan/orbifold.hpp"

#include "stackyfan/error.hpp"
#include "stackyfan/normal_form.hpp"

#include <algorithm>
#include <set>

namespace stackyfan {

namespace {

std::vector<IntVec> weighted_generators(const WeightedFan& fan, const ConeRef& cone) {
  std::vector<IntVec> out;
  for (auto r : cone) out.push_back(fan.weighted_generator(r));
  return out;
}

}  // namespace

CoverData cover_lattice(const WeightedFan& fan, const ConeRef& cone) {
  ConeRef c = cone;
  std::sort(c.begin(), c.end());
  if (!fan.is_cone(c)) throw Error(ErrorCode::InvalidInput, "cover_lattice: not a cone of the fan");
  const std::size_t n = fan.rank();
  CoverData out{c, Lattice::standard(n), {}};
  bool first = true;
  for (auto s : fan.cones_containing(c)) {
    Lattice L = lattice_from_generators(weighted_generators(fan, fan.max_cones()[s]), n);
    out.lattice = first ? L : intersect(out.lattice, L);
    first = false;
  }
  if (!out.lattice.full_rank()) throw Error(ErrorCode::NotSimplicial, "cover_lattice: maximal cone is not full-dimensional");
  out.chart_group = quotient_group(Lattice::standard(n), out.lattice);
  return out;
}

std::vector<CoverData> all_cover_lattices(const WeightedFan& fan) {
  std::set<ConeRef> faces;
  for (const auto& c : fan.max_cones()) {
    const std::size_t k = c.size();
    for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
      ConeRef f;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1UL << i)) f.push_back(c[i]);
      faces.insert(f);
    }
  }
  std::vector<ConeRef> ordered(faces.begin(), faces.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const ConeRef& a, const ConeRef& b) { return a.size() < b.size(); });
  std::vector<CoverData> out;
  for (const auto& f : ordered) out.push_back(cover_lattice(fan, f));
  return out;
}

bool chart_basis_check(const WeightedFan& fan, const ConeRef& cone) {
  CoverData cd = cover_lattice(fan, cone);
  std::vector<IntVec> gens = weighted_generators(fan, cd.cone);
  std::vector<RatVec> span;
  for (const auto& g : gens) span.push_back(to_rat(g));
  return lattice_in_subspace(cd.lattice, span) == lattice_from_generators(gens, fan.rank());
}

FundamentalGroup orbifold_pi1(const WeightedFan& fan) {
  const std::size_t n = fan.rank();
  std::vector<IntVec> gens;
  for (std::size_t r = 0; r < fan.num_rays(); ++r) gens.push_back(fan.weighted_generator(r));
  Lattice L = lattice_from_generators(gens, n);
  if (!L.full_rank()) throw Error(ErrorCode::NotFullRank, "orbifold_pi1: rays do not span (fan is not complete)");
  return FundamentalGroup{quotient_group(Lattice::standard(n), L), L};
}

UniversalCover universal_cover(const WeightedFan& fan) {
  FundamentalGroup pi = orbifold_pi1(fan);
  const std::size_t n = fan.rank();
  RatMatrix Binv = inverse(to_rat(pi.lattice.basis()));
  std::vector<IntVec> gens;
  std::vector<Int> weights;
  for (std::size_t r = 0; r < fan.num_rays(); ++r) {
    IntVec y = to_int(to_rat(fan.weighted_generator(r)) * Binv);
    Int g = gcd_of(y);
    gens.push_back(primitive_part(y));
    weights.push_back(g);
  }
  return UniversalCover{pi.lattice, WeightedFan(n, gens, weights, fan.max_cones()), pi.group};
}

Int ray_stabilizer_order(const WeightedFan& fan, std::size_t ray) {
  if (ray >= fan.num_rays()) throw Error(ErrorCode::InvalidInput, "ray index out of range");
  return fan.rays()[ray].weight;
}

}  // namespace stackyfan
