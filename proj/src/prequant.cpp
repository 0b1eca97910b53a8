#include "stackyfan/prequant.hpp"

#include "stackyfan/error.hpp"
#include "stackyfan/normal_form.hpp"
#include "stackyfan/orbifold.hpp"

namespace stackyfan {

namespace {

HPolytope irredundant(const HPolytope& P) {
  HPolytope out(P.rank());
  for (auto i : supporting_facets(P)) {
    Facet f = P.facets()[i];
    if (!f.weight) f.weight = Int(1);
    if (*f.weight < 1) throw Error(ErrorCode::InvalidInput, "facet weights must be positive");
    out.add(f);
  }
  return out;
}

HPolytope translated(const HPolytope& P, const RatVec& t) {
  HPolytope out(P.rank());
  for (const auto& f : P.facets()) out.add(Facet{f.normal, f.offset + dot(t, f.normal), f.weight});
  return out;
}

}  // namespace

VertexCharacters vertex_characters_of_polytope(const HPolytope& P, const RatVec& t) {
  if (t.size() != P.rank()) throw Error(ErrorCode::RankMismatch, "translation has wrong length");
  HPolytope Q = translated(irredundant(P), t);
  WeightedFan fan = dual_fan(Q);
  VertexCharacters out;
  for (const auto& c : fan.max_cones()) {
    RatMatrix A(c.size(), Q.rank());
    RatVec b(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = 0; j < Q.rank(); ++j) A(i, j) = Q.facets()[c[i]].normal[j];
      b[i] = Q.facets()[c[i]].offset;
    }
    RatVec v = *solve(A, b);
    for (auto r : c)
      if (!is_integral(dot(v, fan.weighted_generator(r))))
        throw Error(ErrorCode::NotIntegral, "vertex is not a character of its cover torus");
    out.push_back(v);
  }
  return out;
}

PrequantResult prequantize(const HPolytope& P, const EnumerationOptions& opts) {
  PrequantResult res;
  res.polytope = irredundant(P);
  res.fan = dual_fan(res.polytope);
  const std::size_t n = P.rank(), R = res.fan.num_rays();
  const auto& F = res.polytope.facets();

  // l = (w_F c_F) + t * (w_F a_F) must be integral.
  RatVec p(R);
  std::vector<RatVec> span(n, RatVec(R));
  for (std::size_t r = 0; r < R; ++r) {
    p[r] = *F[r].weight * F[r].offset;
    for (std::size_t i = 0; i < n; ++i) span[i][r] = *F[r].weight * F[r].normal[i];
  }
  auto x = affine_meets_lattice(p, span, Lattice::standard(R));
  if (!x) return res;

  RatMatrix A(R, n);
  RatVec b(R);
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t i = 0; i < n; ++i) A(r, i) = span[i][r];
    b[r] = (*x)[r] - p[r];
  }
  RatVec t = *solve(A, b);
  // t is determined modulo the characters of the cover torus.
  t = reduce_modulo(t, dual_lattice(orbifold_pi1(res.fan).lattice));

  res.prequantizable = true;
  res.translation = t;
  res.l.resize(R);
  for (std::size_t r = 0; r < R; ++r) res.l[r] = to_int(RatVec{*F[r].weight * (F[r].offset + dot(t, F[r].normal))})[0];

  res.vertex_characters = vertex_characters_of_polytope(res.polytope, t);
  if (res.vertex_characters != to_vertex_characters(res.fan, res.l))
    throw std::logic_error("prequantize: translated vertices differ from the bundle characters");

  RatVec h(R);
  for (std::size_t r = 0; r < R; ++r) h[r] = ratio(res.l[r], *F[r].weight);
  res.bundles = bundles_with_class(res.fan, h, opts);
  return res;
}

}  // namespace stackyfan
