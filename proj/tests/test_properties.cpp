#include "stackyfan/lattice.hpp"
#include "stackyfan/normal_form.hpp"
#include "stackyfan/picard.hpp"
#include "stackyfan/reduction.hpp"

#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "properties.hpp"

#include <map>

using namespace stackyfan;

namespace {

const std::vector<corpus::Sample>& samples() {
  static const auto c = corpus::make_corpus(200, 20261014);
  return c;
}

IntMatrix to_matrix(const oracle::IntRows& rows, std::size_t n) { return IntMatrix::from_rows(rows, n); }

// Row vector v times the integer matrix G.
IntVec times(const IntVec& v, const oracle::IntRows& G) {
  IntVec out(G[0].size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += v[i] * G[i][j];
  return out;
}

std::multiset<Int> weight_multiset(const HPolytope& P) {
  std::multiset<Int> w;
  for (const auto& f : P.facets()) w.insert(f.weight.value_or(1));
  return w;
}

}  // namespace

TEST_CASE("hermite and smith identities on random matrices") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    IntMatrix M = props::random_int_matrix(rng);
    std::string h = props::hnf_identities(M);
    std::string s = props::snf_identities(M);
    CHECK_MESSAGE(h.empty(), h);
    CHECK_MESSAGE(s.empty(), s);
  }
}

TEST_CASE("lattice basis is canonical") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    std::size_t n = 1 + i % 4;
    auto gens = oracle::random_matrix(n + 1, n, rng, 9);
    auto U = oracle::random_unimodular(n + 1, rng, 8);
    auto mixed = oracle::mul(U, gens, n);
    CHECK(lattice_from_generators(gens, n) == lattice_from_generators(mixed, n));
    CHECK(lattice_from_generators(gens, n).basis() == lattice_from_generators(mixed, n).basis());
  }
}

TEST_CASE("dual of dual, quotient orders") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    std::size_t n = 1 + i % 3;
    auto gens = oracle::random_matrix(n, n, rng, 6);
    Int d = oracle::det(gens);
    if (d == 0) continue;
    Lattice L = lattice_from_generators(gens, n);
    CHECK(dual_lattice(dual_lattice(L)) == L);
    CHECK(quotient_group(Lattice::standard(n), L).order() == abs(d));
    CHECK(quotient_group(dual_lattice(L), Lattice::standard(n)).order() == abs(d));
    Quotient q = quotient(Lattice::standard(n), L);
    CHECK(q.coset_reps.size() == abs(d));
  }
}

TEST_CASE("intersection agrees with membership") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 60; ++i) {
    auto a = oracle::random_matrix(2, 2, rng, 4);
    auto b = oracle::random_matrix(2, 2, rng, 4);
    if (oracle::det(a) == 0 || oracle::det(b) == 0) continue;
    Lattice I = intersect(lattice_from_generators(a, 2), lattice_from_generators(b, 2));
    oracle::scan_box({-12, -12}, {12, 12}, [&](const IntVec& v) {
      CHECK(I.contains(v) == (oracle::in_span_z(a, v) && oracle::in_span_z(b, v)));
    });
  }
}

TEST_CASE("affine meets lattice: lines in the plane") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-12, 12), den(1, 6);
  for (int i = 0; i < 300; ++i) {
    RatVec p{ratio(num(rng), den(rng)), ratio(num(rng), den(rng))};
    IntVec v{num(rng), num(rng)};
    if (is_zero(v)) continue;
    // The line p + Qv meets Z^2 iff <p, v_perp> is an integer for the primitive normal.
    IntVec perp = primitive_part(IntVec{-v[1], v[0]});
    bool expect = is_integral(dot(p, perp));
    auto w = affine_meets_lattice(p, {to_rat(v)}, Lattice::standard(2));
    CHECK(bool(w) == expect);
    if (w) {
      CHECK(is_integral(*w));
      CHECK(dot(*w, perp) == dot(p, perp));
    }
  }
}

TEST_CASE("corpus: bundle round trip") {
  for (const auto& s : samples()) {
    std::string r = props::round_trip(s);
    CHECK_MESSAGE(r.empty(), r << " | " << props::describe(s));
  }
}

TEST_CASE("corpus: h0 equals box count") {
  for (const auto& s : samples()) {
    std::string r = props::h0_brute(s);
    CHECK_MESSAGE(r.empty(), r << " | " << props::describe(s));
  }
}

TEST_CASE("corpus: torsion order equals fundamental group order") {
  for (const auto& s : samples()) {
    std::string r = props::torsion_order(s);
    CHECK_MESSAGE(r.empty(), r << " | " << props::describe(s));
  }
}

TEST_CASE("corpus: chart basis check") {
  for (const auto& s : samples()) {
    std::string r = props::chart_checks(s);
    CHECK_MESSAGE(r.empty(), r << " | " << props::describe(s));
  }
}

TEST_CASE("corpus: partition identity for corank one and two") {
  std::mt19937_64 rng(6);
  for (const auto& s : samples()) {
    const std::size_t n = s.fan.rank();
    for (std::size_t corank : {1, 2}) {
      if (corank > n) continue;
      Subtorus T = corpus::random_subtorus(n, n - corank, rng);
      std::string r = props::partition(s, T);
      CHECK_MESSAGE(r.empty(), r << " | " << props::describe(s) << " d=" << n - corank);
    }
  }
}

TEST_CASE("corpus: sections invariant under a change of lattice basis") {
  std::mt19937_64 rng(7);
  for (const auto& s : samples()) {
    const std::size_t n = s.fan.rank();
    auto U = oracle::random_unimodular(n, rng, 6);
    std::vector<IntVec> rays;
    std::vector<Int> weights;
    for (const auto& r : s.fan.rays()) {
      rays.push_back(times(r.generator, U));
      weights.push_back(r.weight);
    }
    WeightedFan moved(n, rays, weights, s.fan.max_cones());
    CHECK(h0(moved, s.l).count == h0(s.fan, s.l).count);
    CHECK(orbifold_pi1(moved).group == orbifold_pi1(s.fan).group);
    CHECK(bundles_equivalent(moved, s.l, s.l));
  }
}

TEST_CASE("corpus: slice counts match leaves") {
  std::mt19937_64 rng(8);
  for (const auto& s : samples()) {
    const std::size_t n = s.fan.rank();
    if (n < 2) continue;
    Subtorus T = corpus::random_subtorus(n, 1, rng);
    ReductionReport rep = qr_rq_report(s.fan, s.l, T);
    for (const auto& leaf : rep.leaves) {
      REQUIRE(leaf.slice);
      CHECK(count_lattice_points(leaf.slice->polytope) == leaf.h0);
    }
  }
}

TEST_CASE("corpus: regularity between critical values") {
  std::mt19937_64 rng(9);
  for (const auto& s : samples()) {
    const std::size_t n = s.fan.rank();
    Subtorus T = corpus::random_subtorus(n, 1, rng);
    HPolytope P = newton_polytope(s.fan, s.l);
    if (vertices(P).empty()) continue;
    auto crit = critical_values(P, T);
    for (const auto& b : bs_values(P, T)) {
      bool is_crit = std::find(crit.begin(), crit.end(), Rat(b.alpha[0])) != crit.end();
      CHECK(b.regular == !is_crit);
    }
  }
}

TEST_CASE("weight transfer is independent of coordinates") {
  std::mt19937_64 rng(10);
  const std::size_t n = 3;
  WeightedFan p3(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}, {1, 1, 1, 1},
                 {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  HPolytope P = newton_polytope(p3, {0, 0, 0, -3});
  IntVec xi{4, 3, 6};
  for (int trial = 0; trial < 10; ++trial) {
    auto G = oracle::random_unimodular(n, rng, 8);
    RatMatrix Ginv = inverse(to_rat(to_matrix(G, n)));
    // x' = x G, so a normal a becomes G^{-1} a and xi becomes G^{-1} xi.
    auto pull = [&](const IntVec& a) { return to_int(matvec(Ginv, to_rat(a))); };
    HPolytope Q(n);
    for (const auto& f : P.facets()) Q.add(*make_facet(to_rat(pull(f.normal)), f.offset, f.weight));
    Subtorus T(n, {xi}), T2(n, {pull(xi)});
    for (long a = 1; a < 18; ++a) {
      ReducedOrbifold r1 = reduce_at(P, T, {Rat(a)});
      ReducedOrbifold r2 = reduce_at(Q, T2, {Rat(T2.basis().row(0) == pull(xi) ? a : -a)});
      CHECK(weight_multiset(r1.polytope) == weight_multiset(r2.polytope));
      CHECK(count_lattice_points(r1.polytope) == count_lattice_points(r2.polytope));
    }
  }
}
