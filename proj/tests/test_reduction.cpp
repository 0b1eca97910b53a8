#include "stackyfan/error.hpp"
#include "stackyfan/picard.hpp"
#include "stackyfan/reduction.hpp"

#include <doctest.h>

#include "oracles.hpp"

#include <map>

using namespace stackyfan;

namespace {

WeightedFan p3() {
  return WeightedFan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}, {1, 1, 1, 1},
                     {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}
const IntVec kO3{0, 0, 0, -3};

HPolytope simplex3() { return newton_polytope(p3(), kO3); }

Subtorus xi() { return Subtorus(3, {{4, 3, 6}}); }

WeightedFan p1_6_4() { return WeightedFan(1, {{1}, {-1}}, {4, 6}, {{0}, {1}}); }

// Facet weight of the reduced polytope traced back to a source facet of P.
std::map<std::size_t, Int> weights_by_source(const ReducedOrbifold& r) {
  std::map<std::size_t, Int> out;
  const auto& sf = r.slice.polytope.facets();
  for (const auto& f : r.polytope.facets())
    for (std::size_t i = 0; i < sf.size(); ++i)
      if (sf[i].normal == f.normal && sf[i].offset == f.offset)
        for (const auto& [src, k] : r.slice.sources[i]) out[src] = *f.weight;
  return out;
}

}  // namespace

TEST_CASE("subtorus normalization") {
  Subtorus t(3, {{8, 6, 12}});
  CHECK(t.basis() == IntMatrix{{4, 3, 6}});
  CHECK(Subtorus(3, {{-4, -3, -6}}).basis() == IntMatrix{{4, 3, 6}});
  CHECK(oracle::error_code_of([] { Subtorus(3, {{1, 1, 0}, {2, 2, 0}}); }) == ErrorCode::InvalidInput);
  CHECK(Subtorus(3, {}).dimension() == 0);
}

TEST_CASE("image and critical values of the simplex") {
  HPolytope img = image_polytope(simplex3(), xi());
  CHECK(vertices(img) == std::vector<RatVec>{{0}, {18}});
  CHECK(critical_values(simplex3(), xi()) == std::vector<Rat>{0, 9, 12, 18});

  auto bs = bs_values(simplex3(), xi());
  REQUIRE(bs.size() == 19);
  for (std::size_t a = 0; a < bs.size(); ++a) {
    CHECK(bs[a].alpha == IntVec{Int(a)});
    bool crit = a == 0 || a == 9 || a == 12 || a == 18;
    CHECK(bs[a].regular == !crit);
  }
}

TEST_CASE("critical images of a square") {
  HPolytope sq(2);
  sq.add(*make_facet({1, 0}, 0));
  sq.add(*make_facet({0, 1}, 0));
  sq.add(*make_facet({-1, 0}, -1));
  sq.add(*make_facet({0, -1}, -1));
  CHECK(critical_values(sq, Subtorus(2, {{1, 0}})) == std::vector<Rat>{0, 1});
  CHECK(critical_values(sq, Subtorus(2, {{1, 1}})) == std::vector<Rat>{0, 1, 2});
  auto bs = bs_values(sq, Subtorus(2, {{1, 1}}));
  CHECK(bs.size() == 3);
  CHECK_FALSE(bs[1].regular);
}

TEST_CASE("leaf counts") {
  CHECK(leaf_h0(p3(), kO3, xi(), {1}) == 0);
  CHECK(leaf_h0(p3(), kO3, xi(), {12}) == 3);
  CHECK(leaf_h0(p3(), kO3, xi(), {6}) == 2);
  CHECK(leaf_h0(p3(), kO3, xi(), {40}) == 0);
  CHECK(leaf_h0(p3(), kO3, xi(), {-1}) == 0);
}

TEST_CASE("quantization commutes with reduction on the simplex") {
  ReductionReport rep = qr_rq_report(p3(), kO3, xi());
  std::vector<std::uint64_t> expect{1, 0, 0, 1, 1, 0, 2, 1, 1, 2, 2, 1, 3, 1, 1, 1, 1, 0, 1};
  REQUIRE(rep.leaves.size() == expect.size());
  for (std::size_t a = 0; a < expect.size(); ++a) CHECK(rep.leaves[a].h0 == expect[a]);
  CHECK(rep.total_h0 == 20);
  CHECK(rep.leaf_sum == 20);
  CHECK(rep.total_check);

  // reductions at the interior critical values are orbifolds, the endpoints are points
  CHECK(rep.leaves[9].reduced);
  CHECK(rep.leaves[12].reduced);
  CHECK_FALSE(rep.leaves[0].reduced);
  CHECK_FALSE(rep.leaves[18].reduced);
  CHECK_FALSE(rep.leaves[0].reduction_error.empty());
  for (std::size_t a = 1; a < 18; ++a) CHECK(rep.leaves[a].reduced);
}

TEST_CASE("weight transfer at a regular value") {
  ReducedOrbifold r = reduce_at(simplex3(), xi(), {6});
  auto w = weights_by_source(r);
  CHECK(w.at(0) == 3);
  CHECK(w.at(2) == 1);
  CHECK(w.at(1) == 2);
  CHECK(r.polytope.facets().size() == 3);
  CHECK(validate(r.fan).valid());
  CHECK(dimension(r.polytope) == 2);
}

TEST_CASE("reduction errors") {
  CHECK(oracle::error_code_of([] { reduce_at(simplex3(), xi(), {19}); }) == ErrorCode::EmptySlice);
  CHECK(oracle::error_code_of([] { reduce_at(simplex3(), xi(), {0}); }) == ErrorCode::NotOrbifold);
  CHECK(reduce_at(simplex3(), xi(), {9}).polytope.facets().size() >= 3);
  CHECK(reduce_at(simplex3(), xi(), {12}).fan.max_cones().size() >= 3);
}

TEST_CASE("trivial and full subtori") {
  ReductionReport none = qr_rq_report(p3(), kO3, Subtorus(3, {}));
  REQUIRE(none.leaves.size() == 1);
  CHECK(none.leaves[0].h0 == 20);
  CHECK(none.total_check);

  Subtorus full(1, {{1}});
  ReductionReport a = qr_rq_report(p1_6_4(), {0, -12}, full);
  REQUIRE(a.leaves.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a.leaves[i].alpha == IntVec{Int(i)});
    CHECK(a.leaves[i].h0 == 1);
  }
  ReductionReport b = qr_rq_report(p1_6_4(), {2, -15}, full);
  REQUIRE(b.leaves.size() == 2);
  CHECK(b.leaves[0].alpha == IntVec{1});
  CHECK(b.leaves[1].alpha == IntVec{2});
  CHECK(b.total_check);

  ReducedOrbifold pt = reduce_at(newton_polytope(p1_6_4(), {0, -12}), full, {1});
  CHECK(pt.polytope.rank() == 0);
}

TEST_CASE("corank one subtorus") {
  Subtorus t(3, {{1, 0, 0}, {0, 1, 1}});
  ReductionReport rep = qr_rq_report(p3(), kO3, t);
  CHECK(rep.leaves.size() == 10);
  CHECK(rep.total_check);
  for (const auto& leaf : rep.leaves) CHECK(leaf.h0 == leaf_h0(p3(), kO3, t, leaf.alpha));
}
