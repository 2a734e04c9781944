#include <doctest.h>

#include "qfm/error.hpp"
#include "qfm/integer_cover.hpp"

using namespace qfm;

namespace {

const IntSet kZ = IntSet::all();

// F: the nonnegative ray is one class, negatives are singletons.
IntegerRelation ray_relation() { return BlockPartition{kZ, {IntSet::ray_up(0)}}; }

PiecewiseTranslation succ_on_ray() { return PiecewiseTranslation::shift(IntSet::ray_up(0), 1); }

}  // namespace

TEST_CASE("integer greedy extension") {
  const auto id = PiecewiseTranslation::identity(kZ);
  CHECK(greedy_extend(PiecewiseTranslation{}, {id}, kZ) == id);
  const auto g = greedy_extend(succ_on_ray(), {id}, kZ);
  CHECK(g == succ_on_ray().unite(PiecewiseTranslation::identity(IntSet::ray_down(-1))));
  CHECK_FALSE(maximality_violation(g, ray_relation()));
  const auto w = maximality_violation(succ_on_ray(), ray_relation());
  REQUIRE(w);
  CHECK(*w == std::pair<std::int64_t, std::int64_t>{-1, -1});
  const IntegerRelation block{BlockPartition{kZ, {IntSet::interval(0, 2)}}};
  const auto v = maximality_violation(PiecewiseTranslation::shift(IntSet::point(0), 1), block);
  REQUIRE(v);
  CHECK(*v == std::pair<std::int64_t, std::int64_t>{2, 0});
}

TEST_CASE("integer levels of the shifted ray") {
  const auto g = greedy_extend(succ_on_ray(), {PiecewiseTranslation::identity(kZ)}, kZ);
  const auto lv = levels_partition(g, ray_relation());
  CHECK(lv.positive.level(1) == IntSet::point(0));
  for (std::size_t n = 1; n <= 100; ++n) CHECK(lv.positive.level(n) == IntSet::point(static_cast<std::int64_t>(n) - 1));
  REQUIRE(lv.positive.acceleration);
  CHECK(lv.positive.acceleration->period == 1);
  CHECK(lv.positive.acceleration->shift == 1);
  CHECK(lv.negative.explicit_levels.empty());
  CHECK(lv.zero == IntSet::ray_down(-1));
  CHECK(lv.positive.odd == IntSet::progression_ray(0, 2, IntPiece::Direction::Up));
  CHECK(lv.positive.even == IntSet::progression_ray(1, 2, IntPiece::Direction::Up));

  const auto [g1, g2] = schroeder_bernstein_cover(g, lv);
  for (std::int64_t x = -5; x <= 20; ++x) {
    const std::int64_t swap01 = x < 0 ? x : (x % 2 == 0 ? x + 1 : x - 1);
    const std::int64_t swap12 = x <= 0 ? x : (x % 2 == 1 ? x + 1 : x - 1);
    CHECK(g1.apply(x) == swap01);
    CHECK(g2.apply(x) == swap12);
  }
}

TEST_CASE("integer cover certificate") {
  const auto c = cover(ray_relation(), succ_on_ray(), {PiecewiseTranslation::identity(kZ)});
  for (const auto& ch : c.checks) CHECK_MESSAGE(ch.passed, ch.name);
  const auto id = cover(ray_relation(), PiecewiseTranslation{}, {PiecewiseTranslation::identity(kZ)});
  CHECK(id.ok());
  CHECK(id.g1 == PiecewiseTranslation::identity(kZ));
  CHECK(id.g2 == PiecewiseTranslation::identity(kZ));

  // both ends: evens shifted up by 2 from 0, odds shifted down by 2 from -1
  const IntegerRelation two{BlockPartition{kZ, {IntSet::progression_ray(0, 2, IntPiece::Direction::Up),
                                                IntSet::progression_ray(-1, 2, IntPiece::Direction::Down)}}};
  const PiecewiseTranslation g0({{IntSet::progression_ray(0, 2, IntPiece::Direction::Up), 2},
                                 {IntSet::progression_ray(-3, 2, IntPiece::Direction::Down), 2}});
  const auto b = cover(two, g0, {PiecewiseTranslation::identity(kZ)});
  for (const auto& ch : b.checks) CHECK_MESSAGE(ch.passed, ch.name);
  CHECK_FALSE(b.levels.negative.explicit_levels.empty());

  // tampering is caught
  auto bad = c;
  bad.g2 = PiecewiseTranslation::identity(kZ);
  CHECK_FALSE(all_passed(recheck(bad, ray_relation())));
}

TEST_CASE("acceleration failure") {
  // Levels grow: X_n = {0..n-1}-like images never repeat by a translation.
  const IntegerRelation f{BlockPartition{kZ, {IntSet::ray_up(0)}}};
  const auto g = greedy_extend(succ_on_ray(), {PiecewiseTranslation::identity(kZ)}, kZ);
  CHECK_THROWS_AS(levels_partition(g, f, 0), Error);
  CHECK_NOTHROW(levels_partition(g, f, 3));
}

TEST_CASE("integer fm_quotient") {
  const TranslationPresentation p{kZ,
                                  {PiecewiseTranslation::identity(kZ), PiecewiseTranslation::shift(kZ, 1),
                                   PiecewiseTranslation::shift(kZ, -1)}};
  const auto r = fm_quotient(p);
  for (const auto& ch : r.checks) CHECK_MESSAGE(ch.passed, ch.name);
  CHECK(r.psis.size() == 9);
  const auto eq = fm_quotient(TranslationPresentation{kZ, {PiecewiseTranslation::identity(kZ)}});
  CHECK(eq.ok());
  for (const auto& g : eq.generators) CHECK(g.is_identity());
  CHECK_THROWS_AS(psi_split(TranslationPresentation{kZ, {PiecewiseTranslation::shift(kZ, 1)}}), Error);
}
