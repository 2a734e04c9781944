#include <doctest.h>

#include <algorithm>
#include <random>

#include "qfm/error.hpp"
#include "qfm/feldman_moore.hpp"
#include "support/relation_oracle.hpp"

using namespace qfm;

namespace {

PartialInjection random_injection_in(std::mt19937_64& rng, const Partition& f) {
  PartialInjection g(f.size());
  std::vector<Point> table(f.size(), kNoPoint);
  for (const auto& c : f.classes()) {
    std::vector<Point> targets = c;
    std::shuffle(targets.begin(), targets.end(), rng);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (rng() % 3 != 0) table[c[i]] = targets[i];
    }
  }
  return PartialInjection(table);
}

}  // namespace

TEST_CASE("Lusin-Novikov decomposition") {
  CHECK(lusin_novikov_decompose(Relation(3, 3)).graphs.empty());
  const Relation fn = Relation::graph_of(std::vector<Point>{1, 2, 0}, 3);
  const auto d = lusin_novikov_decompose(fn);
  REQUIRE(d.graphs.size() == 1);
  CHECK(d.graphs[0] == PartialMap{1, 2, 0});
  CHECK(d.uniformization == PartialMap{1, 2, 0});

  // sections of sizes 1, 2, 3, 0, 2
  Relation r(5, 5);
  r.insert(0, 4);
  r.insert(1, 0), r.insert(1, 3);
  r.insert(2, 0), r.insert(2, 1), r.insert(2, 2);
  r.insert(4, 1), r.insert(4, 4);
  const auto e = lusin_novikov_decompose(r);
  REQUIRE(e.graphs.size() == 3);
  Relation u(5, 5);
  for (const auto& g : e.graphs)
    for (Point x = 0; x < 5; ++x)
      if (g[x] != kNoPoint) u.insert(x, g[x]);
  CHECK(u == r);
  CHECK(e.uniformization == PartialMap{4, 0, 0, kNoPoint, 1});
}

TEST_CASE("classical construction") {
  const auto eq = classical_fm(Partition::discrete(4));
  CHECK(eq.ok());
  CHECK(eq.generators.empty());
  const auto two = classical_fm(Partition::indiscrete(2));
  CHECK(two.ok());
  REQUIRE(two.generators.size() == 1);
  CHECK(two.generators[0] == Permutation{1, 0});
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto e = testing::random_partition(rng, 8, 1 + rng() % 8);
    const auto c = classical_fm(e);
    CHECK(c.ok());
    CHECK(testing::naive_closure(8, c.generators) == testing::naive_closure(8, canonical_enumeration(e).graphs));
  }
}

TEST_CASE("psi split") {
  const auto id = psi_split(EnumeratedEquivalence{3, {identity_map(3)}});
  REQUIRE(id.size() == 1);
  CHECK(id[0] == PartialInjection::identity(3));
  const auto sw = psi_split(EnumeratedEquivalence{2, {{1, 0}, {0, 1}}});
  CHECK(sw[0] == PartialInjection(std::vector<Point>{1, 0}));
  // constant-to-0 on the class {0,1}, with identity and swap closing it up
  const auto cst = psi_split(EnumeratedEquivalence{2, {{0, 0}, {0, 1}, {1, 0}}});
  CHECK(cst[0] == PartialInjection(std::vector<Point>{0, kNoPoint}));
  CHECK_THROWS_AS(psi_split(EnumeratedEquivalence{2, {{1, 1}}}), Error);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto f = testing::random_partition(rng, n, 1 + rng() % n);
    const auto psis = psi_split(canonical_enumeration(f));
    Relation u(n, n);
    for (const auto& p : psis) {
      for (auto [x, y] : p.pairs()) {
        CHECK(f.equivalent(x, y));
        u.insert(x, y);
      }
    }
    CHECK(u == Relation::from_partition(f));
  }
}

TEST_CASE("greedy extension and levels") {
  CHECK(greedy_extend(PartialInjection(3), {}) == PartialInjection::identity(3));
  const PartialInjection g0(std::vector<Point>{1, kNoPoint, kNoPoint});
  const PartialInjection next(std::vector<Point>{kNoPoint, 2, kNoPoint});
  const auto g = greedy_extend(g0, {next});
  CHECK(g(0) == 1);
  CHECK(g(1) == 2);

  const Partition all3 = Partition::indiscrete(3);
  try {
    levels_partition(g0, all3);
    FAIL("expected NotMaximal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotMaximal);
    CHECK(e.witness() == "(2,0)");
  }
  const PartialInjection cyc(std::vector<Point>{1, 2, 0});
  const auto lv = levels_partition(cyc, all3);
  CHECK(lv.positive.empty());
  CHECK(lv.negative.empty());
  CHECK(lv.zero == QuotientSubset::full(3));
  const auto [g1, g2] = schroeder_bernstein_cover(cyc, lv);
  CHECK(g1 == cyc.table());
  CHECK(g2 == invert(cyc.table()));
}

TEST_CASE("cover certificates on random instances") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 9;
    const auto f = testing::random_partition(rng, n, 1 + rng() % n);
    const auto g0 = random_injection_in(rng, f);
    const auto c = cover(f, g0, psi_split(canonical_enumeration(f)));
    for (const auto& ch : c.checks) CHECK_MESSAGE(ch.passed, ch.name);
    CHECK(recheck(c, f).size() == c.checks.size());
  }
}

TEST_CASE("fm_quotient") {
  const auto eq = fm_quotient(EnumeratedEquivalence{3, {identity_map(3)}});
  CHECK(eq.ok());
  for (const auto& g : eq.generators) CHECK(g == identity_map(3));
  const auto sw = fm_quotient(EnumeratedEquivalence{2, {{0, 1}, {1, 0}}});
  CHECK(sw.ok());
  CHECK(std::find(sw.generators.begin(), sw.generators.end(), Permutation{1, 0}) != sw.generators.end());
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto f = testing::random_partition(rng, n, 1 + rng() % n);
    const auto r = fm_quotient(canonical_enumeration(f));
    CHECK(r.ok());
    CHECK(r.orbits == f);
  }
}

TEST_CASE("weak uniformization") {
  Relation r(3, 3);
  r.insert(0, 1), r.insert(0, 2);
  const std::vector<PartialMap> cover_maps{{2, kNoPoint, kNoPoint}, {1, kNoPoint, kNoPoint}};
  const auto u = weak_uniformize(r, cover_maps);
  CHECK(u.phi[0] == 2);
  CHECK(u.index[0] == 0);
  CHECK(u.phi[1] == kNoPoint);
  r.insert(1, 1);
  CHECK_THROWS_AS(weak_uniformize(r, cover_maps), Error);
  const Relation fn = Relation::graph_of(std::vector<Point>{2, 0, 1}, 3);
  CHECK(weak_uniformize(fn, {{2, 0, 1}}).phi == PartialMap{2, 0, 1});
}
