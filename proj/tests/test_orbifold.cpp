#include "stackyfan/error.hpp"
#include "stackyfan/orbifold.hpp"

#include <doctest.h>

#include "oracles.hpp"

using namespace stackyfan;

namespace {

WeightedFan p1_6_4() { return WeightedFan(1, {{1}, {-1}}, {4, 6}, {{0}, {1}}); }
WeightedFan p2_2_2_3() { return WeightedFan(2, {{1, 1}, {-1, 0}, {0, -1}}, {3, 2, 2}, {{0, 1}, {1, 2}, {0, 2}}); }
WeightedFan p2() { return WeightedFan(2, {{1, 0}, {0, 1}, {-1, -1}}, {1, 1, 1}, {{0, 1}, {1, 2}, {0, 2}}); }

oracle::IntRows weighted_rows(const WeightedFan& f, const ConeRef& c) {
  oracle::IntRows out;
  for (auto r : c) out.push_back(f.weighted_generator(r));
  return out;
}

// v lies in the cover lattice of tau iff it lies in the weighted span of every
// maximal cone containing tau.
bool in_cover(const WeightedFan& f, const ConeRef& tau, const IntVec& v) {
  for (auto s : f.cones_containing(tau))
    if (!oracle::in_span_z(weighted_rows(f, f.max_cones()[s]), v)) return false;
  return true;
}

}  // namespace

TEST_CASE("cover lattices of the weighted projective line") {
  WeightedFan f = p1_6_4();
  CoverData c0 = cover_lattice(f, {});
  CHECK(c0.lattice == lattice_from_generators({{12}}, 1));
  CHECK(c0.chart_group.invariant_factors == IntVec{12});
  CHECK(cover_lattice(f, {0}).lattice == lattice_from_generators({{4}}, 1));
  CHECK(cover_lattice(f, {1}).chart_group.order() == 6);
  for (long v = -30; v <= 30; ++v) CHECK(c0.lattice.contains(IntVec{v}) == in_cover(f, {}, {v}));
  CHECK_THROWS_AS(cover_lattice(f, {0, 1}), Error);
}

TEST_CASE("cover lattices agree with membership oracle") {
  for (const WeightedFan& f : {p2_2_2_3(), p2()}) {
    auto all = all_cover_lattices(f);
    // zero cone, three rays and three maximal cones
    REQUIRE(all.size() == 7);
    CHECK(all[0].cone.empty());
    for (const auto& cd : all) {
      for (long a = -7; a <= 7; ++a)
        for (long b = -7; b <= 7; ++b) CHECK(cd.lattice.contains(IntVec{a, b}) == in_cover(f, cd.cone, {a, b}));
      if (cd.cone.size() == 2)
        CHECK(cd.chart_group.order() == abs(oracle::det(weighted_rows(f, cd.cone))));
    }
  }
}

TEST_CASE("chart basis check") {
  for (const WeightedFan& f : {p1_6_4(), p2_2_2_3(), p2()})
    for (const auto& cd : all_cover_lattices(f)) CHECK(chart_basis_check(f, cd.cone));
}

TEST_CASE("orbifold fundamental group") {
  FundamentalGroup a = orbifold_pi1(p1_6_4());
  CHECK(a.group.invariant_factors == IntVec{2});
  CHECK(a.lattice == lattice_from_generators({{2}}, 1));

  FundamentalGroup b = orbifold_pi1(p2_2_2_3());
  CHECK(b.group.invariant_factors == IntVec{2});
  CHECK(b.lattice.basis() == IntMatrix{{1, 1}, {0, 2}});

  CHECK(orbifold_pi1(p2()).group.trivial());

  WeightedFan flat(2, {{1, 0}, {-1, 0}}, {1, 1}, {{0}, {1}});
  bool thrown = false;
  try {
    orbifold_pi1(flat);
  } catch (const Error& e) {
    thrown = e.code() == ErrorCode::NotFullRank;
  }
  CHECK(thrown);
}

TEST_CASE("universal cover") {
  UniversalCover u = universal_cover(p1_6_4());
  CHECK(u.deck_group.invariant_factors == IntVec{2});
  CHECK(u.cover_fan.rays()[0].weight == 2);
  CHECK(u.cover_fan.rays()[1].weight == 3);
  CHECK(orbifold_pi1(u.cover_fan).group.trivial());

  UniversalCover v = universal_cover(p2_2_2_3());
  CHECK(orbifold_pi1(v.cover_fan).group.trivial());
  CHECK(validate(v.cover_fan).valid());
  // w' nu' expressed in the base basis recovers w nu.
  for (std::size_t r = 0; r < 3; ++r) {
    IntVec y = v.cover_fan.weighted_generator(r);
    IntVec back(2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) back[j] += y[i] * v.base_lattice.basis()(i, j);
    CHECK(back == p2_2_2_3().weighted_generator(r));
  }

  UniversalCover w = universal_cover(p2());
  CHECK(w.deck_group.trivial());
  CHECK(w.base_lattice == Lattice::standard(2));
}

TEST_CASE("ray stabilizers") {
  CHECK(ray_stabilizer_order(p2_2_2_3(), 0) == 3);
  CHECK(ray_stabilizer_order(p1_6_4(), 1) == 6);
  CHECK_THROWS_AS(ray_stabilizer_order(p2(), 3), Error);
}
