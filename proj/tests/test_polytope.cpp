#include "stackyfan/error.hpp"
#include "stackyfan/normal_form.hpp"
#include "stackyfan/polytope.hpp"

#include <doctest.h>

#include "oracles.hpp"

using namespace stackyfan;

namespace {

HPolytope make(std::vector<std::pair<RatVec, Rat>> rows) {
  HPolytope P(rows[0].first.size());
  for (auto& [a, c] : rows)
    if (auto f = make_facet(a, c)) P.add(*f);
  return P;
}

HPolytope simplex3() { return make({{{1, 0, 0}, 0}, {{0, 1, 0}, 0}, {{0, 0, 1}, 0}, {{-1, -1, -1}, -3}}); }

Int binomial(long n, long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Points of P by scanning a caller-provided box.
std::vector<IntVec> scan(const HPolytope& P, const IntVec& lo, const IntVec& hi) {
  oracle::IntRows normals;
  RatVec offsets;
  for (const auto& f : P.facets()) {
    normals.push_back(f.normal);
    offsets.push_back(f.offset);
  }
  return oracle::box_points(normals, offsets, lo, hi);
}

}  // namespace

TEST_CASE("vertices of an interval") {
  HPolytope P = make({{{4}, 0}, {{-6}, -12}});
  CHECK(vertices(P) == std::vector<RatVec>{{0}, {2}});
}

TEST_CASE("vertices of the simplex 3Δ³") {
  auto v = vertices(simplex3());
  CHECK(v.size() == 4);
  CHECK(std::find(v.begin(), v.end(), RatVec{0, 0, 3}) != v.end());
  for (const auto& x : v) CHECK(tight_facets(simplex3(), x).size() >= 3);
}

TEST_CASE("infeasible and unbounded systems") {
  CHECK(vertices(make({{{1}, 1}, {{-1}, 0}})).empty());
  CHECK(dimension(make({{{1}, 1}, {{-1}, 0}})) == -1);
  bool unbounded = false;
  try {
    vertices(make({{{1, 0}, 0}, {{0, 1}, 0}, {{-1, 1}, -1}}));
  } catch (const Error& e) {
    unbounded = e.code() == ErrorCode::Unbounded;
  }
  CHECK(unbounded);
  CHECK_THROWS_AS(vertices(make({{{1, 0}, 0}, {{-1, 0}, -1}})), Error);
  CHECK(vertices(HPolytope::empty(2)).empty());
}

TEST_CASE("lattice points") {
  CHECK(count_lattice_points(simplex3()) == binomial(6, 3));
  CHECK(lattice_points(simplex3()) == scan(simplex3(), {-1, -1, -1}, {4, 4, 4}));
  CHECK(count_lattice_points(HPolytope::empty(3)) == 0);

  HPolytope tri = make({{{0, 1}, -1}, {{1, -1}, -1}, {{-1, -1}, -1}});
  auto pts = lattice_points(tri);
  CHECK(pts.size() == 9);
  CHECK(pts == scan(tri, {-3, -3}, {3, 3}));
}

TEST_CASE("lattice points of a sublattice") {
  HPolytope seg = make({{{1}, 0}, {{-1}, -1}});
  Lattice half = lattice_from_rational_generators({{Rat(1, 2)}}, 1);
  CHECK(lattice_points(seg, half) == std::vector<RatVec>{{0}, {Rat(1, 2)}, {1}});
  Lattice even = lattice_from_generators({{2, 0}, {1, 1}}, 2);
  HPolytope sq = make({{{1, 0}, 0}, {{0, 1}, 0}, {{-1, 0}, -2}, {{0, -1}, -2}});
  auto pts = lattice_points(sq, even);
  CHECK(pts.size() == 5);
  for (const auto& p : pts) CHECK(even.contains(p));
}

TEST_CASE("enumeration cap") {
  HPolytope big = make({{{1, 0}, 0}, {{0, 1}, 0}, {{-1, 0}, -1000}, {{0, -1}, -1000}});
  bool capped = false;
  try {
    lattice_points(big, EnumerationOptions{1000});
  } catch (const Error& e) {
    capped = e.code() == ErrorCode::CapExceeded;
  }
  CHECK(capped);
  CHECK(count_lattice_points(big) == 1001 * 1001);
}

TEST_CASE("projection") {
  HPolytope img = project(simplex3(), IntMatrix{{4, 3, 6}});
  CHECK(vertices(img) == std::vector<RatVec>{{0}, {18}});
  CHECK(img.facets().size() == 2);

  HPolytope id = project(simplex3(), IntMatrix::identity(3));
  CHECK(vertices(id) == vertices(simplex3()));

  HPolytope sq = make({{{1, 0}, 0}, {{0, 1}, 0}, {{-1, 0}, -1}, {{0, -1}, -1}});
  CHECK(vertices(project(sq, IntMatrix{{1, 1}})) == std::vector<RatVec>{{0}, {2}});
  CHECK(vertices(project(sq, IntMatrix{{1, 0}})) == std::vector<RatVec>{{0}, {1}});
  CHECK_THROWS_AS(project(sq, IntMatrix{{1, 1}, {2, 2}}), Error);

  // Image containment vs. lattice points.
  auto pts = lattice_points(simplex3());
  HPolytope p2 = project(simplex3(), IntMatrix{{1, 2, 0}, {0, 1, 1}});
  for (const auto& x : pts) CHECK(p2.contains(IntVec{x[0] + 2 * x[1], x[1] + x[2]}));
}

TEST_CASE("slices") {
  IntMatrix pi{{4, 3, 6}};
  Slice s = slice(simplex3(), pi, {12}, {3, 0, 0});
  CHECK(s.kernel_basis.rows() == 2);
  auto ys = lattice_points(s.polytope);
  CHECK(ys.size() == 3);
  std::set<IntVec> xs;
  for (const auto& y : ys) {
    IntVec x{3, 0, 0};
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) x[j] += y[i] * s.kernel_basis(i, j);
    xs.insert(x);
  }
  CHECK(xs == std::set<IntVec>{{3, 0, 0}, {0, 2, 1}, {0, 0, 2}});

  Slice out = slice(simplex3(), pi, {19}, {4, 1, 0});
  CHECK(vertices(out.polytope).empty());

  Slice origin = slice(simplex3(), pi, {0}, {0, 0, 0});
  CHECK(vertices(origin.polytope).size() == 1);
  CHECK(count_lattice_points(origin.polytope) == 1);

  CHECK_THROWS_AS(slice(simplex3(), pi, {1}, {0, 0, 0}), Error);
  CHECK_THROWS_AS(slice(simplex3(), IntMatrix{{1, 1, 1}, {2, 2, 2}}, {0, 0}, {0, 0, 0}), Error);
}

TEST_CASE("slice count identity on the simplex") {
  IntMatrix pi{{4, 3, 6}};
  auto pts = lattice_points(simplex3());
  for (long a = -1; a <= 19; ++a) {
    std::size_t fiber = 0;
    for (const auto& x : pts)
      if (4 * x[0] + 3 * x[1] + 6 * x[2] == a) ++fiber;
    // 4*1 + 3*(-1) = 1, so (a, -a, 0) lies on the level set.
    Slice s = slice(simplex3(), pi, {a}, {a, -a, 0});
    CHECK(count_lattice_points(s.polytope) == fiber);
  }
}

TEST_CASE("supporting facets") {
  HPolytope P = make({{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, -2}, {{-1, 0}, -5}});
  CHECK(supporting_facets(P) == std::vector<std::size_t>{0, 1, 2});
}
